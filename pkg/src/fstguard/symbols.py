"""Symbol tables: a bijection between symbol names and dense integer ids.

Id 0 is always epsilon and is spelled ``<eps>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

EPS = 0
EPS_NAME = "<eps>"

Word = tuple  # tuple[int, ...], never containing EPS
Label = Union[int, str, None]


@dataclass(frozen=True)
class SymbolTable:
    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        if not names or names[0] != EPS_NAME:
            raise ValueError(f"symbol id 0 must be {EPS_NAME!r}")
        index = {}
        for i, name in enumerate(names):
            if not name or any(c.isspace() for c in name):
                raise ValueError(f"invalid symbol name {name!r}")
            if name in index:
                raise ValueError(f"duplicate symbol name {name!r}")
            index[name] = i
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "SymbolTable":
        """Build a table from non-epsilon names, in the given order."""
        return cls((EPS_NAME,) + tuple(n for n in names if n != EPS_NAME))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    @property
    def symbols(self) -> range:
        """Ids of the non-epsilon symbols."""
        return range(1, len(self.names))

    def id(self, label: Label) -> int:
        if label is None or label == "" or label == EPS_NAME:
            return EPS
        if isinstance(label, int):
            if not 0 <= label < len(self.names):
                raise KeyError(f"symbol id {label} out of range")
            return label
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown symbol {label!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def encode(self, word: Union[str, Sequence[Label]]) -> Word:
        """Turn ``"i1 i2"`` or ``["i1", "i2"]`` into a tuple of ids."""
        if isinstance(word, str):
            word = word.split()
        ids = tuple(self.id(s) for s in word)
        return tuple(i for i in ids if i != EPS)

    def decode(self, word: Sequence[int]) -> str:
        return " ".join(self.names[i] for i in word)

    def ids(self, names: Iterable[Label]) -> frozenset:
        return frozenset(self.id(n) for n in names) - {EPS}

    def to_text(self) -> str:
        return "".join(f"{name}\t{i}\n" for i, name in enumerate(self.names))

    @classmethod
    def from_text(cls, text: str) -> "SymbolTable":
        entries = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'name<TAB>id'")
            name, raw = parts
            try:
                i = int(raw)
            except ValueError:
                raise ValueError(f"line {lineno}: bad id {raw!r}") from None
            if i in entries:
                raise ValueError(f"line {lineno}: duplicate id {i}")
            entries[i] = name
        if entries.get(0) != EPS_NAME:
            raise ValueError(f"symbol table must map {EPS_NAME} to 0")
        if sorted(entries) != list(range(len(entries))):
            raise ValueError("symbol ids must be dense from 0")
        return cls(tuple(entries[i] for i in range(len(entries))))
