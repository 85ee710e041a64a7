"""Frame decoding, color-space conversion and dominant-color extraction.

Frames are binary PPM (P6) images. Hue/saturation/value use the 8-bit
convention (H in [0,180] = degrees/2, S and V in [0,255]) so feature
magnitudes stay commensurate with the engagement features; grayscale is
Rec.601 luma. Dominant colors come from seeded Lloyd k-means with
k-means++ initialization, clustered in RGB by default or in HSV/CIELAB.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyVideoError, FormatError

GRAY_WEIGHTS = np.array([0.299, 0.587, 0.114])

# centroids closer than this (L2 in RGB) merge in the emitted palette
PALETTE_MERGE_TOL = 1.0


@dataclass(frozen=True)
class Frame:
    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8


@dataclass(frozen=True)
class PaletteColor:
    rgb: tuple[float, float, float]
    weight: float


@dataclass(frozen=True)
class ColorSummary:
    mean_hue: float
    mean_saturation: float
    mean_intensity: float
    palette: tuple[PaletteColor, ...]
    k_requested: int
    k_fitted: int


@dataclass(frozen=True)
class KMeansResult:
    centroids: np.ndarray  # (k_used, 3), RGB
    weights: np.ndarray  # (k_used,), sums to 1
    wcss: float
    wcss_history: tuple[float, ...]  # per assignment step, non-increasing
    k_used: int


# ---------------------------------------------------------------------------
# PPM decoding


def _next_header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif ch.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError("truncated PPM header")
    return data[start:pos], pos


def decode_ppm(data: bytes) -> Frame:
    """Decode a binary PPM (P6, maxval 255); header comments are skipped."""
    if data[:2] != b"P6":
        raise FormatError(f"not a binary PPM (magic {data[:2]!r})")
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _next_header_token(data, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise FormatError(f"bad PPM header field {token!r}")
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise FormatError(f"bad PPM dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"unsupported PPM maxval {maxval} (need 255)")
    pos += 1  # single whitespace byte after maxval
    need = width * height * 3
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise FormatError(f"truncated PPM payload ({len(payload)} of {need} bytes)")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return Frame(width=width, height=height, pixels=pixels)


# ---------------------------------------------------------------------------
# Color conversions


def rgb_to_hsv(pixel) -> tuple[float, float, float]:
    """8-bit HSV of one (r,g,b) pixel: h in [0,180], s and v in [0,255]."""
    r, g, b = (float(c) for c in pixel)
    mx = max(r, g, b)
    mn = min(r, g, b)
    d = mx - mn
    v = mx
    s = 0.0 if mx == 0.0 else d / mx * 255.0
    if d == 0.0:
        h = 0.0
    elif mx == r:
        h = (60.0 * ((g - b) / d)) % 360.0
    elif mx == g:
        h = 60.0 * (2.0 + (b - r) / d)
    else:
        h = 60.0 * (4.0 + (r - g) / d)
    return h / 2.0, s, v


def rgb_to_gray(pixel) -> float:
    """Rec.601 luma: 0.299 r + 0.587 g + 0.114 b."""
    r, g, b = (float(c) for c in pixel)
    return 0.299 * r + 0.587 * g + 0.114 * b


def rgb_to_hsv_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized :func:`rgb_to_hsv` over an (n,3) float array."""
    rgb = np.asarray(rgb, dtype=float)
    r, g, b = rgb[:, 0], rgb[:, 1], rgb[:, 2]
    mx = rgb.max(axis=1)
    mn = rgb.min(axis=1)
    d = mx - mn
    v = mx
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(mx == 0.0, 0.0, d / np.where(mx == 0.0, 1.0, mx) * 255.0)
        dd = np.where(d == 0.0, 1.0, d)
        h = np.select(
            [d == 0.0, mx == r, mx == g],
            [0.0, (60.0 * ((g - b) / dd)) % 360.0, 60.0 * (2.0 + (b - r) / dd)],
            default=60.0 * (4.0 + (r - g) / dd),
        )
    return np.stack([h / 2.0, s, v], axis=1)


def hsv_to_rgb_array(hsv: np.ndarray) -> np.ndarray:
    """Inverse of :func:`rgb_to_hsv_array` (8-bit conventions)."""
    hsv = np.asarray(hsv, dtype=float)
    h = (hsv[:, 0] * 2.0) % 360.0
    s = np.clip(hsv[:, 1], 0.0, 255.0) / 255.0
    v = np.clip(hsv[:, 2], 0.0, 255.0)
    c = v * s
    hp = h / 60.0
    x = c * (1.0 - np.abs(hp % 2.0 - 1.0))
    zero = np.zeros_like(c)
    sector = np.floor(hp).astype(int) % 6
    r1 = np.choose(sector, [c, x, zero, zero, x, c])
    g1 = np.choose(sector, [x, c, c, x, zero, zero])
    b1 = np.choose(sector, [zero, zero, x, c, c, x])
    m = v - c
    return np.stack([r1 + m, g1 + m, b1 + m], axis=1)


def rgb_to_lab_array(rgb: np.ndarray) -> np.ndarray:
    """sRGB (0..255) to CIELAB under D65."""
    srgb = np.asarray(rgb, dtype=float) / 255.0
    linear = np.where(srgb <= 0.04045, srgb / 12.92, ((srgb + 0.055) / 1.055) ** 2.4)
    m = np.array(
        [
            [0.4124564, 0.3575761, 0.1804375],
            [0.2126729, 0.7151522, 0.0721750],
            [0.0193339, 0.1191920, 0.9503041],
        ]
    )
    xyz = linear @ m.T
    white = np.array([0.95047, 1.0, 1.08883])
    t = xyz / white
    eps = (6.0 / 29.0) ** 3
    f = np.where(t > eps, np.cbrt(t), t / (3.0 * (6.0 / 29.0) ** 2) + 4.0 / 29.0)
    L = 116.0 * f[:, 1] - 16.0
    a = 500.0 * (f[:, 0] - f[:, 1])
    b = 200.0 * (f[:, 1] - f[:, 2])
    return np.stack([L, a, b], axis=1)


def lab_to_rgb_array(lab: np.ndarray) -> np.ndarray:
    """CIELAB (D65) back to sRGB in 0..255, clipped to gamut."""
    lab = np.asarray(lab, dtype=float)
    fy = (lab[:, 0] + 16.0) / 116.0
    fx = fy + lab[:, 1] / 500.0
    fz = fy - lab[:, 2] / 200.0
    delta = 6.0 / 29.0
    f = np.stack([fx, fy, fz], axis=1)
    t = np.where(f > delta, f**3, 3.0 * delta**2 * (f - 4.0 / 29.0))
    white = np.array([0.95047, 1.0, 1.08883])
    xyz = t * white
    m_inv = np.array(
        [
            [3.2404542, -1.5371385, -0.4985314],
            [-0.9692660, 1.8760108, 0.0415560],
            [0.0556434, -0.2040259, 1.0572252],
        ]
    )
    linear = xyz @ m_inv.T
    linear = np.clip(linear, 0.0, None)
    srgb = np.where(
        linear <= 0.0031308, 12.92 * linear, 1.055 * linear ** (1.0 / 2.4) - 0.055
    )
    return np.clip(srgb, 0.0, 1.0) * 255.0


def gray_of_array(rgb: np.ndarray) -> np.ndarray:
    return np.asarray(rgb, dtype=float) @ GRAY_WEIGHTS


_TO_MODEL = {
    "rgb": lambda p: p,
    "hsv": rgb_to_hsv_array,
    "lab": rgb_to_lab_array,
}
_FROM_MODEL = {
    "rgb": lambda p: p,
    "hsv": hsv_to_rgb_array,
    "lab": lab_to_rgb_array,
}


# ---------------------------------------------------------------------------
# K-means


def _assign(points: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Squared distance to each centroid and the argmin assignment."""
    d2 = np.empty((points.shape[0], centroids.shape[0]))
    for j in range(centroids.shape[0]):
        diff = points - centroids[j]
        d2[:, j] = np.einsum("ij,ij->i", diff, diff)
    return d2, d2.argmin(axis=1)


def _kmeans_plus_plus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    if k == 1:
        return centroids
    diff = points - centroids[0]
    best_d2 = np.einsum("ij,ij->i", diff, diff)
    for j in range(1, k):
        total = best_d2.sum()
        if total <= 0.0:
            centroids[j:] = centroids[0]
            break
        idx = rng.choice(n, p=best_d2 / total)
        centroids[j] = points[idx]
        diff = points - centroids[j]
        best_d2 = np.minimum(best_d2, np.einsum("ij,ij->i", diff, diff))
    return centroids


def kmeans_palette(
    pixels: np.ndarray,
    k: int,
    seed: int,
    max_iter: int = 100,
    tol: float = 1e-4,
    color_model: str = "rgb",
) -> KMeansResult:
    """Lloyd k-means over an (n,3) pixel matrix, seeded and deterministic.

    Clustering runs in ``color_model`` space (rgb, hsv or lab); centroids
    are converted back to RGB in the result. Empty clusters are reseeded to
    the point farthest from its assigned centroid. If k exceeds the pixel
    count it is reduced to n (``k_used`` records the reduction).
    """
    if color_model not in _TO_MODEL:
        raise ValueError(f"unknown color model {color_model!r}")
    pixels = np.asarray(pixels, dtype=float)
    if pixels.ndim != 2 or pixels.shape[1] != 3:
        raise ValueError(f"pixels must be (n,3), got {pixels.shape}")
    n = pixels.shape[0]
    if n < 1:
        raise ValueError("need at least one pixel")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    k_used = min(k, n)

    points = _TO_MODEL[color_model](pixels)
    rng = np.random.default_rng(seed)
    centroids = _kmeans_plus_plus(points, k_used, rng)

    history: list[float] = []
    for _ in range(max_iter):
        d2, assign = _assign(points, centroids)
        min_d2 = d2[np.arange(n), assign]
        history.append(float(min_d2.sum()))

        new_centroids = centroids.copy()
        counts = np.bincount(assign, minlength=k_used)
        for j in range(k_used):
            if counts[j] > 0:
                new_centroids[j] = points[assign == j].mean(axis=0)
        empties = np.flatnonzero(counts == 0)
        if empties.size:
            farthest = np.argsort(-min_d2)
            for slot, j in enumerate(empties):
                new_centroids[j] = points[farthest[slot % n]]
        shift = np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max()
        centroids = new_centroids
        if shift < tol:
            break

    d2, assign = _assign(points, centroids)
    wcss = float(d2[np.arange(n), assign].sum())
    history.append(wcss)
    weights = np.bincount(assign, minlength=k_used) / n

    return KMeansResult(
        centroids=np.asarray(_FROM_MODEL[color_model](centroids), dtype=float),
        weights=weights,
        wcss=wcss,
        wcss_history=tuple(history),
        k_used=k_used,
    )


def merge_close_colors(
    centroids: np.ndarray, weights: np.ndarray, tol: float = PALETTE_MERGE_TOL
) -> tuple[PaletteColor, ...]:
    """Merge centroids within tol (L2, RGB) into weight-averaged colors.

    Zero-weight centroids are dropped; the result is sorted by weight
    descending, ties by RGB ascending.
    """
    keep = weights > 0.0
    centroids = np.asarray(centroids, dtype=float)[keep]
    weights = np.asarray(weights, dtype=float)[keep]
    order = sorted(
        range(len(weights)), key=lambda i: (-weights[i], tuple(centroids[i]))
    )
    reps: list[list] = []  # [color (3,), weight]
    for i in order:
        color, w = centroids[i], weights[i]
        for rep in reps:
            if np.linalg.norm(rep[0] - color) <= tol:
                total = rep[1] + w
                rep[0] = (rep[0] * rep[1] + color * w) / total
                rep[1] = total
                break
        else:
            reps.append([color.copy(), w])
    reps.sort(key=lambda rep: (-rep[1], tuple(rep[0])))
    return tuple(PaletteColor(rgb=tuple(map(float, c)), weight=float(w)) for c, w in reps)


def list_frames(frames_dir: str | Path) -> list[Path]:
    """PPM frame files in lexicographic order."""
    frames_dir = Path(frames_dir)
    if not frames_dir.is_dir():
        return []
    return sorted(p for p in frames_dir.iterdir() if p.suffix.lower() == ".ppm")


def video_color_summary(
    frames_dir: str | Path,
    k: int = 5,
    seed: int = 0,
    stride: int = 4,
    color_model: str = "rgb",
    max_iter: int = 100,
    tol: float = 1e-4,
) -> ColorSummary:
    """Pooled-pixel color summary of all frames in a directory.

    Frames are subsampled with ``stride`` in both axes (stride 1 keeps every
    pixel); hue/saturation/intensity are plain arithmetic means over the
    pooled pixels, and the palette is the merged k-means result.
    """
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    paths = list_frames(frames_dir)
    if not paths:
        raise EmptyVideoError(f"no PPM frames in {frames_dir}")
    pools = []
    for path in paths:
        frame = decode_ppm(path.read_bytes())
        sub = frame.pixels[::stride, ::stride]
        pools.append(sub.reshape(-1, 3).astype(float))
    pixels = np.concatenate(pools, axis=0)

    hsv = rgb_to_hsv_array(pixels)
    fit = kmeans_palette(pixels, k=k, seed=seed, max_iter=max_iter, tol=tol,
                         color_model=color_model)
    return ColorSummary(
        mean_hue=float(hsv[:, 0].mean()),
        mean_saturation=float(hsv[:, 1].mean()),
        mean_intensity=float(gray_of_array(pixels).mean()),
        palette=merge_close_colors(fit.centroids, fit.weights),
        k_requested=k,
        k_fitted=fit.k_used,
    )


def palette_svg(palette: tuple[PaletteColor, ...], width: int = 300, height: int = 40) -> str:
    """SVG strip with one rect per palette color, width proportional to weight."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    x = 0.0
    for color in palette:
        w = color.weight * width
        r, g, b = (int(round(c)) for c in color.rgb)
        parts.append(
            f'<rect x="{x:.2f}" y="0" width="{w:.2f}" height="{height}" '
            f'fill="rgb({r},{g},{b})"/>'
        )
        x += w
    parts.append("</svg>")
    return "\n".join(parts)
