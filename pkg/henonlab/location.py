# -*- coding: utf-8 -*-
"""The class that points at a place in a run configuration."""


from __future__ import annotations

import typing


class Location:
    """A file, a line in it and the config field found there."""

    def __init__(
        self,
        *,
        file_name: typing.Optional[str] = None,
        line_number: typing.Optional[int] = None,
        field: typing.Optional[str] = None,
        parent: typing.Optional[Location] = None,
    ) -> None:
        """Constructor."""
        if line_number is not None:
            assert line_number > 0
            assert file_name is not None

        self.file_name = file_name
        self.line_number = line_number
        self.field = field
        self.parent = parent

    def is_valid(self) -> bool:
        """Check whether this object points anywhere."""
        return self.file_name is not None or self.field is not None

    def create_child(
        self, field: str, *, line_number: typing.Optional[int] = None
    ) -> Location:
        """Point at a nested field of the same file."""
        full_field = f"{self.field}.{field}" if self.field else field
        return Location(
            file_name=self.file_name,
            line_number=line_number if line_number is not None else self.line_number,
            field=full_field,
            parent=self.parent,
        )

    def __str__(self) -> str:
        """Stringify location."""
        if self.file_name is None:
            result = f"[{self.field}]" if self.field else "<UNKNOWN>"
        else:
            result = self.file_name
            if self.line_number is not None and self.line_number > 0:
                result = f"{result}:{self.line_number}"
            if self.field:
                result = f"{result} [{self.field}]"

        if self.parent is not None:
            result = f"{str(self.parent)} => {result}"
        return result
