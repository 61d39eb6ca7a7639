"""Statistics and learning algorithms for manifold-valued data."""

from .descent import GradientDescentResult, riemannian_gradient_descent
from .frechet import FrechetMean, FrechetMeanResult, frechet_mean, frechet_variance
from .kmeans import OnlineKMeans, RiemannianKMeans
from .pca import TangentPCA

__all__ = [
    "FrechetMean",
    "FrechetMeanResult",
    "GradientDescentResult",
    "OnlineKMeans",
    "RiemannianKMeans",
    "TangentPCA",
    "frechet_mean",
    "frechet_variance",
    "riemannian_gradient_descent",
]
