"""Instance file format versions: major.minor[.patch], patch ignored."""
from dataclasses import dataclass, field

from dcs import settings
from dcs.errors import SchemaError


class IncorrectVersionError(SchemaError):
    def __init__(self, *args, used, supported, **kwargs):
        super().__init__(*args, path="$.format", **kwargs)
        self.used = used
        self.supported = supported

    def __str__(self):
        return (
            f"Unsupported instance file. This solver reads format {self.supported}, "
            f"but the file was written with format {self.used}."
        )


class UnsupportedVersionFormatError(SchemaError):
    def __init__(self, *args, version, **kwargs):
        super().__init__(*args, path="$.format", **kwargs)
        self.version = version


@dataclass(frozen=True, order=True, init=False)
class Version:
    major: int
    minor: int
    original: str = field(compare=False)

    def __init__(self, version: str) -> None:
        try:
            major, minor, *_ = str(version).split(".")
            numbers = (int(major), int(minor))
        except ValueError:
            raise UnsupportedVersionFormatError(
                f"Expected version to be in format 1.2.3, got {version}", version=version
            )
        object.__setattr__(self, "major", numbers[0])
        object.__setattr__(self, "minor", numbers[1])
        object.__setattr__(self, "original", str(version))

    def __repr__(self):
        return f"Version: {self.original}"

    def __str__(self):
        return self.original


def check_version(version: str) -> None:
    """
    Accept files from the supported major format with at least the supported
    minor version. Newer majors are refused because their schema may differ.
    """
    supported = Version(settings.FORMAT_SUPPORTED_VERSION)
    used = Version(version)

    if used.major != supported.major or used < supported:
        raise IncorrectVersionError(used=used, supported=supported)
