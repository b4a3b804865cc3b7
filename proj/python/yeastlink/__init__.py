"""Pheromone-link simulator: transmitter, diffusive channel, receiver."""

try:  # installed wheel: the extension lives inside the package
    from ._core import (
        ChannelParams,
        StimulusProfile,
        Strain,
        __version__,
        detect_events,
        impulse_response,
        mc_estimate,
        peak_time,
        run_experiment_config,
        simulate_receiver,
        simulate_transmitter,
    )
except ImportError:  # build tree: the extension sits on PYTHONPATH
    from _core import (
        ChannelParams,
        StimulusProfile,
        Strain,
        __version__,
        detect_events,
        impulse_response,
        mc_estimate,
        peak_time,
        run_experiment_config,
        simulate_receiver,
        simulate_transmitter,
    )

__all__ = [
    "ChannelParams",
    "StimulusProfile",
    "Strain",
    "detect_events",
    "impulse_response",
    "mc_estimate",
    "peak_time",
    "run_experiment_config",
    "simulate_receiver",
    "simulate_transmitter",
    "__version__",
]
