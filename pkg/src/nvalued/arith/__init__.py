from .irreducible import Certificate, Status, irreducibility_certificate
from .primes import FactoredInteger, factorize, is_probable_prime, parse_factored
from .wendt import (WendtCriterion, binom_weighted_sum_identity, divisibility_quotient,
                    n4_divisibility_check, wendt_criterion, wendt_det, wolstenholme_check)

__all__ = [
    "Certificate", "Status", "irreducibility_certificate",
    "FactoredInteger", "factorize", "is_probable_prime", "parse_factored",
    "WendtCriterion", "binom_weighted_sum_identity", "divisibility_quotient",
    "n4_divisibility_check", "wendt_criterion", "wendt_det", "wolstenholme_check",
]
