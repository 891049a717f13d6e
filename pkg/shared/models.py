import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import InvariantViolation


class Sentinel(Enum):
    UNDETERMINED = 'UNDETERMINED'
    ABSENT_ON_SAMPLED_CELLS = 'ABSENT_ON_SAMPLED_CELLS'

    def __str__(self):
        return self.value


UNDETERMINED = Sentinel.UNDETERMINED
ABSENT_ON_SAMPLED_CELLS = Sentinel.ABSENT_ON_SAMPLED_CELLS


class Verdict(Enum):
    WITNESS = 'WITNESS'            # simple totally real member found
    NONE_SIMPLE = 'NONE_SIMPLE'    # none on the covered strata
    INCOMPLETE = 'INCOMPLETE'      # time budget or unresolved strata

    def __str__(self):
        return self.value


def fmt(value):
    """Rationals as 'p/q', sentinels by name, everything else by str."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    return value


def fmt_point(point):
    return {name: str(Fraction(v)) for name, v in point.items()}


def point_text(point):
    return ', '.join(f'{name} = {Fraction(v)}' for name, v in point.items())


def _require(condition, message, item):
    if not condition:
        raise InvariantViolation(f'{message}: {item}')


@dataclass
class Region:
    sample_point: dict
    descriptor: object
    real_count: int
    complex_distinct: int
    signature: int = None

    def check(self, delta):
        _require(self.real_count % 2 == self.complex_distinct % 2, 'real and complex counts differ in parity', self)
        _require(0 <= self.real_count <= self.complex_distinct <= delta,
                 f'counts outside 0 <= real <= complex <= {delta}', self)

    def to_dict(self):
        return {
            'sample_point': fmt_point(self.sample_point),
            'descriptor': self.descriptor,
            'real': self.real_count,
            'complex_distinct': self.complex_distinct,
        }

    def to_text(self):
        return (f'{self.descriptor_text()}: {self.real_count} real, '
                f'{self.complex_distinct} distinct complex (sample {point_text(self.sample_point)})')

    def descriptor_text(self):
        if isinstance(self.descriptor, dict) and 'interval' in self.descriptor:
            lo, hi = self.descriptor['interval']
            return f"({lo or '-oo'}, {hi or '+oo'})"
        if isinstance(self.descriptor, dict) and 'signs' in self.descriptor:
            return 'signs ' + ''.join('+' if s > 0 else '-' for s in self.descriptor['signs'])
        return str(self.descriptor)


@dataclass
class BoundaryPoint:
    point: object
    real_count: object
    complex_distinct: object
    method: str
    label: str = ''
    minor_signs: list = None
    note: str = ''
    on_winfty: bool = False

    def check(self, delta):
        if self.real_count is UNDETERMINED or self.complex_distinct is UNDETERMINED:
            return
        _require(self.real_count % 2 == self.complex_distinct % 2, 'real and complex counts differ in parity', self)
        _require(0 <= self.real_count <= self.complex_distinct, 'counts outside 0 <= real <= complex', self)
        # fibers over wInfty are not bounded by the generic count
        _require(self.on_winfty or self.complex_distinct <= delta, f'complex count above {delta}', self)

    def to_dict(self):
        data = {
            'point': self.point_dict(),
            'label': self.label,
            'real': fmt(self.real_count),
            'complex_distinct': fmt(self.complex_distinct),
            'method': self.method,
        }
        if self.minor_signs is not None:
            data['minor_signs'] = list(self.minor_signs)
        if self.note:
            data['note'] = self.note
        return data

    def point_dict(self):
        if isinstance(self.point, str):
            return self.point
        if hasattr(self.point, 'to_dict'):
            return self.point.to_dict()
        return fmt_point(self.point)

    def to_text(self):
        signs = f' signs {tuple(self.minor_signs)}' if self.minor_signs is not None else ''
        note = f' [{self.note}]' if self.note else ''
        return (f'{self.label}: {fmt(self.real_count)} real, {fmt(self.complex_distinct)} distinct complex '
                f'via {self.method}{signs}{note}')


@dataclass
class Witness:
    point: dict
    real_count: int
    complex_distinct: int
    oracle_real: int = None

    def to_dict(self):
        return {
            'point': fmt_point(self.point),
            'real': self.real_count,
            'complex_distinct': self.complex_distinct,
            'oracle_real': self.oracle_real,
        }


@dataclass
class ClassificationReport:
    system_name: str
    params: tuple
    delta: int
    w: str
    winfty: str = '1'
    wh: str = ''
    degrees: dict = field(default_factory=dict)
    regions: list = field(default_factory=list)
    boundary: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)
    vacuous: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    mode: str = 'certified'
    seed: int = None
    coordinate_changes: list = field(default_factory=list)
    incomplete: bool = False

    def check(self):
        for item in self.regions + self.boundary:
            item.check(self.delta)

    @property
    def max_real(self):
        counts = [r.real_count for r in self.regions]
        counts += [b.real_count for b in self.boundary if b.real_count is not UNDETERMINED]
        return max(counts, default=0)

    def merge(self, other, prefix='', method='substitution'):
        """Fold a stratum report into this one; its regions become boundary entries."""
        for b in other.boundary:
            b.label = f'{prefix}{b.label}'
            b.on_winfty = True
            self.boundary.append(b)
        for r in other.regions:
            self.boundary.append(BoundaryPoint(r.sample_point, r.real_count, r.complex_distinct,
                                               method, f'{prefix}{r.descriptor_text()}', on_winfty=True))
        self.unresolved.extend(f'{prefix}{u}' for u in other.unresolved)
        self.vacuous.extend(f'{prefix}{v}' for v in other.vacuous)
        self.incomplete = self.incomplete or other.incomplete

    def region_lines(self, limit=20):
        if len(self.regions) <= limit:
            return [f'  {r.to_text()}' for r in self.regions]
        groups = {}
        for r in self.regions:
            groups.setdefault((r.real_count, r.complex_distinct), []).append(r)
        return [f'  {len(rs)} sample(s) with {real} real, {cplx} distinct complex '
                f'(e.g. {point_text(rs[0].sample_point)})'
                for (real, cplx), rs in sorted(groups.items(), reverse=True)]

    def to_dict(self):
        return {
            'system': self.system_name,
            'params': list(self.params),
            'delta': self.delta,
            'w': self.w,
            'winfty': self.winfty,
            'wh': self.wh,
            'degrees': self.degrees,
            'regions': [r.to_dict() for r in self.regions],
            'boundary': [b.to_dict() for b in self.boundary],
            'unresolved': list(self.unresolved),
            'vacuous': list(self.vacuous),
            'notes': list(self.notes),
            'witnesses': [w.to_dict() for w in self.witnesses],
            'mode': self.mode,
            'seed': self.seed,
            'coordinate_changes': list(self.coordinate_changes),
            'incomplete': self.incomplete,
        }

    def to_text(self):
        lines = [f'Classification of {self.system_name or "system"} '
                 f'(parameters {", ".join(self.params) or "none"}; mode {self.mode})',
                 f'  delta = {self.delta}',
                 f'  wInfty = {self.winfty}',
                 f'  wH = {self.wh}',
                 f'  w = {self.w}']
        if self.degrees:
            lines.append('  degrees: ' + ', '.join(f'{k} {v}' for k, v in sorted(self.degrees.items())))
        lines.append(f'Regions ({len(self.regions)}):')
        lines.extend(self.region_lines())
        if self.boundary:
            lines.append(f'Boundary ({len(self.boundary)}):')
            lines.extend(f'  {b.to_text()}' for b in self.boundary)
        if self.witnesses:
            lines.append('Witnesses:')
            lines.extend(f'  {point_text(w.point)}: {w.real_count} real' for w in self.witnesses)
        if self.vacuous:
            lines.append('Vacuous strata (no real points):')
            lines.extend(f'  {v}' for v in self.vacuous)
        lines.extend(f'Note: {n}' for n in self.notes)
        if self.unresolved:
            lines.append('Unresolved strata:')
            lines.extend(f'  {u}' for u in self.unresolved)
        if self.coordinate_changes:
            lines.append('Coordinate changes: ' + '; '.join(self.coordinate_changes))
        if self.incomplete:
            lines.append('INCOMPLETE: time budget exhausted')
        return '\n'.join(lines)


@dataclass
class SectionVerdict:
    curve_name: str
    delta: int
    verdict: Verdict
    hyperplane: str = ''
    witness: Witness = None
    boxes: list = field(default_factory=list)
    charts: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)
    points_at_infinity: dict = None
    max_real: int = None
    reports: list = field(default_factory=list)

    def to_dict(self):
        return {
            'curve': self.curve_name,
            'delta': self.delta,
            'verdict': self.verdict.value,
            'hyperplane': self.hyperplane,
            'witness': self.witness.to_dict() if self.witness else None,
            'boxes': [[[str(lo), str(hi)] for lo, hi in box] for box in self.boxes],
            'charts': list(self.charts),
            'unresolved': list(self.unresolved),
            'points_at_infinity': self.points_at_infinity,
            'max_real': self.max_real,
            'reports': [r.to_dict() for r in self.reports],
        }

    def to_text(self):
        lines = [f'{self.curve_name}: {self.verdict.value} (delta = {self.delta})']
        if self.hyperplane:
            lines.append(f'  hyperplane: {self.hyperplane}')
        for box in self.boxes:
            lines.append('  point in ' + ' x '.join(f'[{lo}, {hi}]' for lo, hi in box))
        if self.max_real is not None:
            lines.append(f'  max real points over covered members: {self.max_real}')
        if self.charts:
            lines.append('  charts: ' + '; '.join(self.charts))
        if self.points_at_infinity:
            lines.append(f"  points at infinity: {self.points_at_infinity['real']} real of "
                         f"{self.points_at_infinity['complex_distinct']}")
        for u in self.unresolved:
            lines.append(f'  unresolved: {u}')
        for r in self.reports:
            lines.append('')
            lines.append(r.to_text())
        return '\n'.join(lines)


@dataclass
class HyperplaneCheck:
    curve_name: str
    hyperplane: str
    real_count: int
    complex_distinct: int
    delta: int
    boxes: list = field(default_factory=list)
    variables: tuple = ()

    def to_dict(self):
        return {
            'curve': self.curve_name,
            'hyperplane': self.hyperplane,
            'real': self.real_count,
            'complex_distinct': self.complex_distinct,
            'delta': self.delta,
            'boxes': [{v: [str(lo), str(hi)] for v, (lo, hi) in zip(self.variables, box)} for box in self.boxes],
        }

    def to_text(self):
        lines = [f'{self.curve_name}: {self.hyperplane} meets the curve in {self.real_count} real of '
                 f'{self.complex_distinct} distinct points (degree {self.delta})']
        for box in self.boxes:
            lines.append('  ' + ', '.join(f'{v} in [{lo}, {hi}]' for v, (lo, hi) in zip(self.variables, box)))
        return '\n'.join(lines)


def file_digest(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    command: str
    inputs: dict
    flags: dict
    seed: int = None
    version: str = __version__
    timings: dict = field(default_factory=dict)
    started_at: datetime = field(default_factory=datetime.now)

    @classmethod
    def create(cls, command, paths, flags, seed=None):
        return cls(command, {str(p): file_digest(p) for p in paths}, dict(flags), seed)

    def to_dict(self, timings=False):
        data = {
            'command': self.command,
            'inputs': self.inputs,
            'flags': self.flags,
            'seed': self.seed,
            'version': self.version,
        }
        if timings:
            data['timings'] = self.timings
            data['started_at'] = self.started_at.isoformat()
        return data


def dump_report(manifest, body, timings=False):
    return json.dumps({'manifest': manifest.to_dict(timings), **body}, sort_keys=True, indent=2)
