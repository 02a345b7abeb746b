from enum import Enum


class Verdict(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"

    def __str__(self) -> str:
        return self.value


YES, NO, UNKNOWN = Verdict.YES, Verdict.NO, Verdict.UNKNOWN
