"""
Contains methods and classes pertaining to bounded regions of the complex
plane; specifically the circles used as integration contours.
"""

from abc import ABCMeta, abstractmethod

import numpy as np


class Bounds(metaclass=ABCMeta):
    """
    Represents a bounded area of the complex plane that can be tested for
    containment of points.

    Attributes:
        center (complex): The center of the bounding area.
    """

    def __init__(self, center=0j):
        self.center = complex(center)

    @abstractmethod
    def contains(self, points):
        """
        Tests whether or not the specified points lie strictly inside this
        bounds.

        :param points: A complex scalar or array of points to test.
        :return: A boolean (array) of the same shape as the points.
        """
        pass

    @abstractmethod
    def distance(self, points):
        """
        Computes the signed distance from the specified points to the border
        of this bounds; negative values lie inside.

        :param points: A complex scalar or array of points.
        :return: A real (array) of the same shape as the points.
        """
        pass


class Circle(Bounds):
    """
    Represents a circle in the complex plane.

    Attributes:
        radius (float): The radius of the circle.
    """

    def __init__(self, center=0j, radius=1.0):
        super().__init__(center)
        if not radius > 0.0:
            raise ValueError("A circle needs a positive radius, not %r."
                             % radius)
        self.radius = float(radius)

    def contains(self, points):
        return self.distance(points) < 0.0

    def distance(self, points):
        return np.abs(np.asarray(points) - self.center) - self.radius

    def boundary(self, nodes):
        """
        Returns equally spaced points on this circle together with the
        trapezoidal weights of the contour integral dw / (2 pi i).

        :param nodes: The number of points.
        :return: A tuple of (points, weights) as complex arrays.
        """
        phases = np.exp(2j * np.pi * np.arange(nodes) / nodes)
        points = self.center + self.radius * phases
        weights = self.radius * phases / nodes
        return points, weights
