"""augforge: generative data augmentation for sparse tabular feature sets.

Dense-layer generative models (VAE, CGAN, VAE-SGAN) built on a minimal
from-scratch neural network core, an iterative loop that appends
reconstructed samples to the training pool, and the surrounding
evaluation machinery (logistic-regression baseline with non-zero
filtering and recursive feature elimination, a small DNN evaluator,
stratified k-fold protocol, metrics, dataset loaders, CLI).
"""

__version__ = "0.1.0"
