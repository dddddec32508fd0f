"""Exception hierarchy for the RPYS pipeline."""


class RPYSError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RPYSError):
    """A corpus file could not be read. Carries the offending line number."""

    def __init__(self, message, line_no=None, path=None):
        self.line_no = line_no
        self.path = path
        super().__init__(message)

    def __str__(self):
        msg = super().__str__()
        where = self.path or "<input>"
        if self.line_no is not None:
            where = f"{where}:{self.line_no}"
        return f"{where}: {msg}"


class MalformedRecord(InputError):
    pass


class InvalidYear(InputError):
    pass


class DuplicateId(InputError):
    def __init__(self, record_id, line_no=None, path=None):
        self.record_id = record_id
        super().__init__(f"duplicate record id {record_id!r}", line_no, path)


class EmptyCorpus(RPYSError):
    """Analysis was requested on a corpus without records."""


class EmptyRange(RPYSError):
    """No counted reference falls inside the configured year range."""


class NoClustersAtYear(RPYSError):
    """Peak attribution found nothing at a detected peak year (internal inconsistency)."""


class SpecOverflow(RPYSError):
    """A fixture spec asks for more citations of one work than there are citing records."""
