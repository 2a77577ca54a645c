"""Exception types shared across the package."""


class LeantapeError(Exception):
    pass


class ShapeMismatch(LeantapeError):
    pass


class InvalidConfig(LeantapeError):
    pass


class UnknownTensor(LeantapeError):
    pass


class MissingSavedValue(LeantapeError):
    """A backward function asked for a value the storage policy did not keep.

    This firing means a storage rule is wrong; it must never happen for a
    correctly configured run.
    """


class UnknownLayerKind(LeantapeError):
    pass


class ShapePropagationError(LeantapeError):
    pass


class UnknownNet(LeantapeError):
    pass
