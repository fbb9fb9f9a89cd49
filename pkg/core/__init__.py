from .config import NetworkConfig, load_config, load_yaml
from .deploy import deploy_network, deploy_uniform
from .errors import ConfigError, DegenerateClusterError, ParameterError, UndefinedAverageError
from .geometry import as_points_array, distance, pairwise_distances
from .network import Network
from .rng import RngStreams, rng_streams
from .types import NodeId, Point2D, Role, SensorNode

__all__ = [
    "NetworkConfig", "load_config", "load_yaml",
    "deploy_network", "deploy_uniform",
    "ConfigError", "DegenerateClusterError", "ParameterError", "UndefinedAverageError",
    "as_points_array", "distance", "pairwise_distances",
    "Network", "RngStreams", "rng_streams",
    "NodeId", "Point2D", "Role", "SensorNode",
]
