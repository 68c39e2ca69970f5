"""Closed inventory of referent sorts."""

from __future__ import annotations

from enum import Enum


class Sort(str, Enum):
    EVENT_TOKEN = "event-token"
    EVENT_TYPE = "event-type"
    ACTION_TYPE = "action-type"
    PROCESS = "process"
    PROPOSITION_TOKEN = "proposition-token"
    PROPOSITION_TYPE = "proposition-type"
    FACT = "fact"
    DESCRIPTION = "description"
    SPEECH_ACT = "speech-act"
    SITUATION = "situation"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, tag: str) -> "Sort":
        """Look up a sort by its hyphenated tag, raising ValueError if unknown."""
        try:
            return cls(tag)
        except ValueError:
            known = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown sort {tag!r} (expected one of: {known})") from None
