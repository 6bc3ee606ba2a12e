"""Mean and standard error estimators for sampling runs."""
from __future__ import absolute_import

import numpy as np


def mean_and_stderr(values, axis=0):
    """Sample mean and standard error of the mean along axis.

    The standard error is zero for fewer than two samples.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[axis]
    mean = np.mean(values, axis=axis)
    if n < 2:
        return mean, np.zeros_like(mean)
    return mean, np.std(values, axis=axis, ddof=1) / np.sqrt(n)


class RunningMoments(object):
    """Count, mean and sum of squared deviations, mergeable across chunks.

    Parameters
    -----------
    shape : tuple
        Shape of one observation.
    """

    def __init__(self, shape=()):
        self.count = 0
        self.mean = np.zeros(shape)
        self.m2 = np.zeros(shape)

    @classmethod
    def from_samples(cls, samples):
        """Moments of samples of shape (n, ...) along the first axis."""
        samples = np.asarray(samples, dtype=np.float64)
        moments = cls(samples.shape[1:])
        moments.count = samples.shape[0]
        if moments.count:
            moments.mean = samples.mean(axis=0)
            moments.m2 = ((samples - moments.mean) ** 2).sum(axis=0)
        return moments

    def merge(self, other):
        """Combine with another chunk (pairwise update, associative)."""
        merged = RunningMoments(np.shape(self.mean))
        merged.count = self.count + other.count
        if merged.count == 0:
            return merged
        delta = other.mean - self.mean
        merged.mean = self.mean + delta * (float(other.count) / merged.count)
        merged.m2 = (
            self.m2
            + other.m2
            + delta ** 2 * (float(self.count) * other.count / merged.count)
        )
        return merged

    @property
    def stderr(self):
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1) / self.count)


def merge_all(moments):
    result = None
    for item in moments:
        result = item if result is None else result.merge(item)
    return result


def batch_means(series, n_batches=20):
    """Mean and batch-means standard error of a correlated Markov chain
    series.

    The series is cut into n_batches contiguous batches (trailing samples
    that do not fill a batch are dropped) and the error is the standard
    error of the batch averages.
    """
    series = np.asarray(series, dtype=np.float64)
    if n_batches < 2:
        raise ValueError("need at least 2 batches, got {}".format(n_batches))
    batch_len = series.shape[0] // n_batches
    if batch_len < 1:
        raise ValueError(
            "series of length {} is too short for {} batches".format(
                series.shape[0], n_batches
            )
        )
    used = series[: batch_len * n_batches]
    batches = used.reshape((n_batches, batch_len) + series.shape[1:]).mean(axis=1)
    return mean_and_stderr(batches)
