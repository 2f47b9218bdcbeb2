"""Channel-sounding data model and processing.

Covers Welch-periodogram SNR estimation for a 64-subcarrier sounding
waveform, a synthetic indoor-propagation grid generator, the threshold
erasure model, and capacity / secrecy-capacity computations.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

CARRIERS = 64
FFT_LENGTH = 2 * CARRIERS


@dataclass(frozen=True)
class SoundingCapture:
    """Raw complex-baseband recording of the periodic sounding signal."""

    iq: np.ndarray
    sample_rate: float = 20e6
    periods: int = 32
    carrier_count: int = CARRIERS

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        need = self.periods * 2 * self.carrier_count
        if self.iq.size < need:
            raise ValueError(
                f"capture has {self.iq.size} samples, need >= {need} "
                f"({self.periods} periods of {2 * self.carrier_count})"
            )


@dataclass(frozen=True)
class Location:
    x: float
    y: float
    region: str


@dataclass(frozen=True)
class ChannelGrid:
    """Per-location, per-subcarrier SNR measurements on a physical grid."""

    locations: tuple[Location, ...]
    snr_db: np.ndarray  # (len(locations), 64)
    tx: tuple[float, float]
    grid_spacing: float = 0.102

    def __post_init__(self):
        if self.snr_db.shape != (len(self.locations), CARRIERS):
            raise ValueError(
                f"snr_db shape {self.snr_db.shape} does not match "
                f"({len(self.locations)}, {CARRIERS})"
            )
        if not np.all(np.isfinite(self.snr_db)):
            raise ValueError("snr_db must be finite")

    def region_indices(self, label: str) -> list[int]:
        return [i for i, loc in enumerate(self.locations) if loc.region == label]

    def region_labels(self) -> set[str]:
        return {loc.region for loc in self.locations}


@dataclass(frozen=True)
class RegionMap:
    """Which grid regions hold Bob, candidate Eves, and excluded space."""

    bob_region: str
    eve_regions: frozenset[str]
    excluded_regions: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.bob_region in self.eve_regions:
            raise ValueError(f"bob region {self.bob_region!r} also listed as an Eve region")

    def validate_against(self, grid: ChannelGrid) -> None:
        labels = grid.region_labels()
        missing = ({self.bob_region} | self.eve_regions) - labels
        if missing:
            raise ValueError(f"regions {sorted(missing)} not present in grid (has {sorted(labels)})")

    def eve_location_indices(self, grid: ChannelGrid) -> list[int]:
        wanted = self.eve_regions - self.excluded_regions
        return [i for i, loc in enumerate(grid.locations) if loc.region in wanted]

    @classmethod
    def from_dict(cls, d: dict) -> "RegionMap":
        return cls(
            bob_region=d["bob_region"],
            eve_regions=frozenset(d["eve_regions"]),
            excluded_regions=frozenset(d.get("excluded_regions", [])),
        )

    def to_dict(self) -> dict:
        return {
            "bob_region": self.bob_region,
            "eve_regions": sorted(self.eve_regions),
            "excluded_regions": sorted(self.excluded_regions),
        }


# ---------------------------------------------------------------------------
# PSD / SNR estimation


def welch_psd(cap: SoundingCapture, fft_length: int = FFT_LENGTH) -> np.ndarray:
    """Averaged periodogram over non-overlapping rectangular segments.

    Segment length equals one sounding period (fft_length samples), so
    subcarriers stay centered on even FFT bins and odd bins hold only
    noise.  Returns fft_length nonnegative powers.
    """
    if fft_length != 2 * cap.carrier_count:
        raise ValueError(
            f"fft_length {fft_length} must be twice the carrier count {cap.carrier_count}"
        )
    nseg = cap.iq.size // fft_length
    if nseg < 1:
        raise ValueError(f"capture too short: {cap.iq.size} samples < {fft_length}")
    segs = cap.iq[: nseg * fft_length].reshape(nseg, fft_length)
    spectra = np.fft.fft(segs, axis=1)
    return (np.abs(spectra) ** 2).mean(axis=0) / fft_length


def snr_estimate(cap: SoundingCapture) -> np.ndarray:
    """Per-subcarrier SNR in dB: even-bin power over the mean odd-bin power."""
    psd = welch_psd(cap)
    noise = float(psd[1::2].mean())
    # guard against numerically-zero odd bins (e.g. a noiseless synthetic
    # capture, where only FFT round-off lands off the tone bins)
    if noise <= 1e-15 * max(float(psd[0::2].mean()), 1e-300):
        raise ValueError("zero noise estimate: all odd FFT bins empty (degenerate capture)")
    signal = psd[0::2]
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(signal / noise)


def synth_capture(
    snr_db,
    seed: int,
    periods: int = 32,
    sample_rate: float = 20e6,
    noiseless: bool = False,
) -> SoundingCapture:
    """Synthetic 64-tone capture whose estimator-measured SNR targets snr_db.

    Tone amplitudes are calibrated against unit-variance complex AWGN so
    that the even-bin/odd-bin power ratio of ``snr_estimate`` equals the
    configured SNR in expectation.
    """
    snr_db = np.broadcast_to(np.asarray(snr_db, dtype=float), (CARRIERS,))
    rng = np.random.default_rng(seed)
    t = np.arange(FFT_LENGTH)
    amps = np.sqrt(10.0 ** (snr_db / 10.0) / FFT_LENGTH)
    phases = rng.uniform(0, 2 * np.pi, size=CARRIERS)
    period = np.zeros(FFT_LENGTH, dtype=complex)
    for i in range(CARRIERS):
        period += amps[i] * np.exp(1j * (2 * np.pi * (2 * i) * t / FFT_LENGTH + phases[i]))
    iq = np.tile(period, periods)
    if not noiseless:
        noise = (rng.standard_normal(iq.size) + 1j * rng.standard_normal(iq.size)) / np.sqrt(2)
        iq = iq + noise
    return SoundingCapture(iq=iq, sample_rate=sample_rate, periods=periods)


# ---------------------------------------------------------------------------
# Erasure model and capacities


def erase_mask(snrs, tau: float) -> np.ndarray:
    """True where the symbol is received: SNR >= tau (boundary included)."""
    return np.asarray(snrs, dtype=float) >= tau


def reliable_count(snrs, tau: float) -> int:
    """Number of subcarriers at or above the threshold."""
    return int(erase_mask(snrs, tau).sum())


def capacity_sum(snrs) -> float:
    """Total Gaussian capacity over parallel subcarriers, bits/channel use.

    C = 1/2 * sum log2(1 + SNR_linear); -inf dB contributes zero.
    """
    db = np.asarray(snrs, dtype=float)
    lin = np.where(np.isneginf(db), 0.0, 10.0 ** (db / 10.0))
    return float(0.5 * np.log2(1.0 + lin).sum())


def secrecy_capacity(bob_snrs, eve_snrs) -> float:
    """Sum of positive per-subcarrier capacity advantages of Bob over Eve."""
    b = np.asarray(bob_snrs, dtype=float)
    e = np.asarray(eve_snrs, dtype=float)
    if b.shape != e.shape:
        raise ValueError(f"shape mismatch: {b.shape} vs {e.shape}")
    lb = np.where(np.isneginf(b), 0.0, 10.0 ** (b / 10.0))
    le = np.where(np.isneginf(e), 0.0, 10.0 ** (e / 10.0))
    diff = 0.5 * (np.log2(1.0 + lb) - np.log2(1.0 + le))
    return float(np.maximum(diff, 0.0).sum())


# ---------------------------------------------------------------------------
# Synthetic environment


@dataclass(frozen=True)
class Wall:
    x1: float
    y1: float
    x2: float
    y2: float
    loss_db: float


@dataclass(frozen=True)
class RegionRect:
    label: str
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x < self.x_max and self.y_min <= y < self.y_max


@dataclass(frozen=True)
class FadingModel:
    enabled: bool = True
    taps: int = 4
    delay_spread: float = 1.5
    sigma_scale: float = 1.0


@dataclass(frozen=True)
class EnvironmentConfig:
    """Floor-plan and propagation parameters for synthetic grids."""

    width: float
    height: float
    grid_spacing: float
    tx: tuple[float, float]
    ref_snr_db: float
    ref_distance: float = 1.0
    path_loss_exponent: float = 3.0
    tx_power_offset_db: float = 0.0
    walls: tuple[Wall, ...] = ()
    regions: tuple[RegionRect, ...] = ()
    fading: FadingModel = field(default_factory=FadingModel)
    region_map: RegionMap | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "EnvironmentConfig":
        return cls(
            width=d["width_m"],
            height=d["height_m"],
            grid_spacing=d.get("grid_spacing_m", 0.102),
            tx=(d["tx"]["x"], d["tx"]["y"]),
            ref_snr_db=d["ref_snr_db"],
            ref_distance=d.get("ref_distance_m", 1.0),
            path_loss_exponent=d.get("path_loss_exponent", 3.0),
            tx_power_offset_db=d.get("tx_power_offset_db", 0.0),
            walls=tuple(Wall(w["x1"], w["y1"], w["x2"], w["y2"], w["loss_db"]) for w in d.get("walls", [])),
            regions=tuple(
                RegionRect(r["label"], r["x_min"], r["x_max"], r["y_min"], r["y_max"])
                for r in d.get("regions", [])
            ),
            fading=FadingModel(**d.get("fading", {})),
            region_map=RegionMap.from_dict(d["region_map"]) if "region_map" in d else None,
        )

    @classmethod
    def from_json_file(cls, path) -> "EnvironmentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _segments_cross(p1, p2, q1, q2) -> bool:
    """Proper/improper intersection test via orientation signs."""

    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 1e-12) - (v < -1e-12)

    def on_seg(a, b, c):
        return (
            min(a[0], b[0]) - 1e-12 <= c[0] <= max(a[0], b[0]) + 1e-12
            and min(a[1], b[1]) - 1e-12 <= c[1] <= max(a[1], b[1]) + 1e-12
        )

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and on_seg(p1, p2, q1):
        return True
    if o2 == 0 and on_seg(p1, p2, q2):
        return True
    if o3 == 0 and on_seg(q1, q2, p1):
        return True
    if o4 == 0 and on_seg(q1, q2, p2):
        return True
    return False


def _fading_db(cfg: FadingModel, seed: int, loc_index: int) -> np.ndarray:
    """Frequency-selective fading in dB from a seeded multipath draw.

    A short complex tap profile with exponentially decaying power gives
    |H(f)|^2 across the 64 subcarriers; per-location seeds keep the grid
    deterministic under any evaluation order.
    """
    if not cfg.enabled:
        return np.zeros(CARRIERS)
    rng = np.random.default_rng([seed, loc_index])
    powers = np.exp(-np.arange(cfg.taps) / cfg.delay_spread)
    powers /= powers.sum()
    taps = (rng.standard_normal(cfg.taps) + 1j * rng.standard_normal(cfg.taps)) * np.sqrt(powers / 2)
    k = np.arange(CARRIERS)
    freq = taps[None, :] * np.exp(-2j * np.pi * k[:, None] * np.arange(cfg.taps)[None, :] / CARRIERS)
    h = np.abs(freq.sum(axis=1))
    h = np.maximum(h, 1e-6)
    return cfg.sigma_scale * 20.0 * np.log10(h)


def synth_grid(cfg: EnvironmentConfig, seed: int) -> ChannelGrid:
    """Deterministic synthetic SNR grid from the environment config.

    Per-subcarrier SNR = reference SNR + power offset - log-distance
    path loss - accumulated wall losses on the direct ray + a seeded
    frequency-selective fading draw.
    """
    nx = int(math.floor(cfg.width / cfg.grid_spacing)) + 1
    ny = int(math.floor(cfg.height / cfg.grid_spacing)) + 1
    if nx < 1 or ny < 1:
        raise ValueError("empty floor plan")
    locations: list[Location] = []
    rows: list[np.ndarray] = []
    for iy in range(ny):
        for ix in range(nx):
            x = ix * cfg.grid_spacing
            y = iy * cfg.grid_spacing
            label = next((r.label for r in cfg.regions if r.contains(x, y)), "open")
            d = math.hypot(x - cfg.tx[0], y - cfg.tx[1])
            path_loss = 10.0 * cfg.path_loss_exponent * math.log10(
                max(d, cfg.ref_distance) / cfg.ref_distance
            )
            wall_loss = sum(
                w.loss_db
                for w in cfg.walls
                if _segments_cross(cfg.tx, (x, y), (w.x1, w.y1), (w.x2, w.y2))
            )
            base = cfg.ref_snr_db + cfg.tx_power_offset_db - path_loss - wall_loss
            idx = len(locations)
            rows.append(base + _fading_db(cfg.fading, seed, idx))
            locations.append(Location(x=x, y=y, region=label))
    return ChannelGrid(
        locations=tuple(locations),
        snr_db=np.array(rows, dtype=float),
        tx=cfg.tx,
        grid_spacing=cfg.grid_spacing,
    )


# ---------------------------------------------------------------------------
# File formats


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def grid_to_csv(grid: ChannelGrid) -> str:
    """One row per location: x, y, region, then the 64 SNR values in dB."""
    buf = io.StringIO()
    buf.write("x,y,region," + ",".join(f"snr_{i:02d}" for i in range(CARRIERS)) + "\n")
    for loc, snrs in zip(grid.locations, grid.snr_db):
        buf.write(
            f"{_fmt(loc.x)},{_fmt(loc.y)},{loc.region},"
            + ",".join(_fmt(v) for v in snrs)
            + "\n"
        )
    return buf.getvalue()


def grid_from_csv(text: str, tx: tuple[float, float] = (0.0, 0.0), grid_spacing: float = 0.102) -> ChannelGrid:
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    if header[:3] != ["x", "y", "region"] or len(header) != 3 + CARRIERS:
        raise ValueError(f"bad grid header: expected x,y,region,snr_00..snr_63, got {header[:4]}...")
    locations = []
    rows = []
    for ln, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3 + CARRIERS:
            raise ValueError(f"line {ln}: expected {3 + CARRIERS} columns, got {len(parts)}")
        try:
            locations.append(Location(x=float(parts[0]), y=float(parts[1]), region=parts[2]))
            rows.append([float(v) for v in parts[3:]])
        except ValueError as exc:
            raise ValueError(f"line {ln}: {exc}") from None
    return ChannelGrid(
        locations=tuple(locations),
        snr_db=np.array(rows, dtype=float),
        tx=tx,
        grid_spacing=grid_spacing,
    )


def load_capture(iq_path, sidecar_path) -> SoundingCapture:
    """Raw capture: interleaved little-endian float32 I,Q + JSON sidecar."""
    with open(sidecar_path) as fh:
        meta = json.load(fh)
    raw = np.fromfile(iq_path, dtype="<f4")
    if raw.size % 2:
        raise ValueError(f"{iq_path}: odd sample count {raw.size}, expected interleaved I,Q pairs")
    iq = raw[0::2].astype(float) + 1j * raw[1::2].astype(float)
    return SoundingCapture(
        iq=iq,
        sample_rate=float(meta.get("sample_rate_hz", 20e6)),
        periods=int(meta.get("periods", 32)),
        carrier_count=int(meta.get("carriers", CARRIERS)),
    )


def save_capture(cap: SoundingCapture, iq_path, sidecar_path, center_freq_hz: float = 1250e6) -> None:
    inter = np.empty(2 * cap.iq.size, dtype="<f4")
    inter[0::2] = cap.iq.real
    inter[1::2] = cap.iq.imag
    inter.tofile(iq_path)
    with open(sidecar_path, "w") as fh:
        json.dump(
            {
                "sample_rate_hz": cap.sample_rate,
                "periods": cap.periods,
                "carriers": cap.carrier_count,
                "center_freq_hz": center_freq_hz,
            },
            fh,
            indent=2,
        )
        fh.write("\n")


# ---------------------------------------------------------------------------
# Heatmap emission


def heatmap_csv(grid: ChannelGrid, values) -> str:
    """Per-location scalar map as x,y,value rows."""
    values = np.asarray(values, dtype=float)
    if values.shape != (len(grid.locations),):
        raise ValueError(f"need one value per location, got {values.shape}")
    buf = io.StringIO()
    buf.write("x,y,value\n")
    for loc, v in zip(grid.locations, values):
        buf.write(f"{_fmt(loc.x)},{_fmt(loc.y)},{_fmt(v)}\n")
    return buf.getvalue()


_RAMP = [(13, 8, 135), (126, 3, 168), (204, 71, 120), (248, 149, 64), (240, 249, 33)]


def _ramp_color(t: float) -> str:
    t = min(max(t, 0.0), 1.0) * (len(_RAMP) - 1)
    i = min(int(t), len(_RAMP) - 2)
    f = t - i
    r, g, b = (
        round(_RAMP[i][c] + f * (_RAMP[i + 1][c] - _RAMP[i][c])) for c in range(3)
    )
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(grid: ChannelGrid, values, cell_px: float = 6.0) -> str:
    """Fixed-ramp SVG rendering of a per-location scalar map (no metadata)."""
    values = np.asarray(values, dtype=float)
    lo, hi = float(values.min()), float(values.max())
    span = hi - lo if hi > lo else 1.0
    xs = sorted({loc.x for loc in grid.locations})
    ys = sorted({loc.y for loc in grid.locations})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    w, h = len(xs) * cell_px, len(ys) * cell_px
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:g}" height="{h:g}" '
        f'viewBox="0 0 {w:g} {h:g}">'
    ]
    for loc, v in zip(grid.locations, values):
        cx = xi[loc.x] * cell_px
        cy = (len(ys) - 1 - yi[loc.y]) * cell_px
        parts.append(
            f'<rect x="{cx:g}" y="{cy:g}" width="{cell_px:g}" height="{cell_px:g}" '
            f'fill="{_ramp_color((v - lo) / span)}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def default_environment() -> EnvironmentConfig:
    """The bundled synthetic environment (offices flanking a hallway)."""
    path = Path(__file__).parent / "data" / "default_env.json"
    return EnvironmentConfig.from_json_file(path)


DEFAULT_GRID_SEED = 2024


def default_grid() -> ChannelGrid:
    """The bundled synthetic grid: default environment at the fixed seed."""
    return synth_grid(default_environment(), seed=DEFAULT_GRID_SEED)
