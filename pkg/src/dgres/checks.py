"""Small containers for itemized pass/fail verdicts."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        s = "%-4s %s" % ("PASS" if self.ok else "FAIL", self.name)
        return s + (": " + self.detail if self.detail else "")


@dataclass
class Checks:
    items: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        c = Check(name, bool(ok), detail)
        self.items.append(c)
        return c

    def extend(self, other, prefix=""):
        for c in other.items:
            self.items.append(Check(prefix + c.name, c.ok, c.detail))

    @property
    def ok(self):
        return all(c.ok for c in self.items)

    def failures(self):
        return [c for c in self.items if not c.ok]

    def __getitem__(self, name):
        for c in self.items:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def lines(self):
        return [c.line() for c in self.items]
