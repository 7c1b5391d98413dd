class CountingConstants:
    # The largest number of tips a tree can have in the dual-graph finiteness argument
    PAPER_MAX_TIPS = 17

    # The published number of trees with at most 17 tips (the one vertex tree included)
    PAPER_TOTAL = 3901520


class EnumerationConstants:
    """Limits for explicit tree generation. Counting has no such limit"""

    # Generating every tree gets slow past 10 tips (2312 rooted classes at n = 10, millions soon after)
    MAX_TIPS = 10

    # Set this environment variable to a positive integer to move the guard
    LIMIT_ENV_VAR = "TIPCOUNT_ENUMERATION_LIMIT"


class CodeAlphabet:
    LEAF = "*"
    OPEN = "("
    CLOSE = ")"

    # Children are sorted with "(" < "*" < ")", which is not ASCII order
    SORT_RANKS = {OPEN: "0", LEAF: "1", CLOSE: "2"}


class BoundConstants:
    KAPPA_CAVEAT = (
        "valid only if the log Kodaira dimension of the complement of C is 2; "
        "this hypothesis is not checked"
    )
    IRREDUCIBLE_CAVEAT = (
        "for irreducible C the bounds are >= 3, so it is enough to consider s >= 3, "
        "where the log Kodaira dimension hypothesis holds"
    )
    CONJECTURE_NOTE = "conjectural line 1 + 2*b1_aff, reported for comparison only"

    # Field names of the curve-topology input document
    DOCUMENT_FIELDS = ("b1", "b2", "g", "branches", "b0_aff", "b1_aff", "p")


class ExitCodes:
    OK = 0
    USAGE = 2
    INVALID = 3
    REFUSED = 4
