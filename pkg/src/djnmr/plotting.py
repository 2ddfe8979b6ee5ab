"""Render spectra and FIDs to image files next to the exported CSV data."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .signal import Fid, Spectrum


def save_spectrum_figure(
    sp: Spectrum,
    path: str | Path,
    *,
    title: str | None = None,
    offsets_hz: Sequence[float] = (),
    window_hz: float | None = None,
) -> Path:
    """Plot the real (absorptive) part of the spectrum and save it.

    ``offsets_hz`` marks expected peak positions; ``window_hz`` limits the
    frequency axis to that half-width around the marked offsets.
    """
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(sp.freq_axis_hz, sp.bins.real, lw=0.8, color="tab:blue")
    for offset in offsets_hz:
        ax.axvline(offset, color="tab:red", lw=0.5, ls="--", alpha=0.6)
    if window_hz and len(offsets_hz):
        ax.set_xlim(min(offsets_hz) - window_hz, max(offsets_hz) + window_hz)
    ax.set_xlabel("offset (Hz)")
    ax.set_ylabel("real part")
    ax.axhline(0.0, color="0.7", lw=0.5)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_fid_figure(fid: Fid, path: str | Path, *, title: str | None = None) -> Path:
    """Plot the quadrature FID components against time and save."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 3))
    t = fid.times()
    ax.plot(t, fid.samples.real, lw=0.6, label="real")
    ax.plot(t, fid.samples.imag, lw=0.6, label="imag")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("signal")
    ax.legend(loc="upper right", fontsize=8)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_spectrum_grid(
    entries: Sequence[tuple[str, Spectrum]],
    path: str | Path,
    *,
    offsets_hz: Sequence[float] = (),
    window_hz: float | None = None,
) -> Path:
    """Stack labelled spectra in rows, basis inputs above the computation."""
    path = Path(path)
    rows = len(entries)
    fig, axes = plt.subplots(rows, 1, figsize=(7, 1.6 * rows), sharex=True)
    if rows == 1:
        axes = [axes]
    for ax, (label, sp) in zip(axes, entries):
        ax.plot(sp.freq_axis_hz, sp.bins.real, lw=0.8, color="tab:blue")
        for offset in offsets_hz:
            ax.axvline(offset, color="tab:red", lw=0.5, ls="--", alpha=0.6)
        ax.axhline(0.0, color="0.7", lw=0.5)
        ax.set_ylabel(label, rotation=0, ha="right", va="center", fontsize=9)
        ax.set_yticks([])
    if window_hz and len(offsets_hz):
        axes[-1].set_xlim(min(offsets_hz) - window_hz, max(offsets_hz) + window_hz)
    axes[-1].set_xlabel("offset (Hz)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
