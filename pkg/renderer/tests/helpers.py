"""Synthetic CSV builders matching the simulator's two table layouts."""
from __future__ import annotations

import math

SWEEP_HEADER = "scenario,state,axis,j,kappa0,n,T,metric,mean,second_moment"
POINT_HEADER = "scenario,t_alpha,kappa0,metric,value"


def write_sweep(path, ns=(2, 4), kappas=(0.0, 0.5, 1.0),
                metrics=("hellinger", "delta"), scenario="sweep_kappa_z"):
    lines = [SWEEP_HEADER]
    for kappa in kappas:
        for n in ns:
            for metric in metrics:
                mean = math.sin(kappa + n) ** 2 if metric == "hellinger" else kappa * n
                lines.append(
                    f"{scenario},z,z,15.0,{kappa!r},{n},50,{metric},{mean!r},{(mean * mean)!r}"
                )
    path.write_text("\n".join(lines) + "\n")
    return path


def write_point(path, t_alphas=range(4), kappas=(0.0, 0.5),
                metrics=("delta", "coherence"), scenario="contour_z"):
    lines = [POINT_HEADER]
    for kappa in kappas:
        for t_alpha in t_alphas:
            for metric in metrics:
                value = math.cos(kappa) * t_alpha
                lines.append(f"{scenario},{t_alpha},{kappa!r},{metric},{value!r}")
    path.write_text("\n".join(lines) + "\n")
    return path
