"""
Contains the timer used to report how long commands and verification suites
take.
"""
import time


class SystemTimer:
    """
    Measures an interval with the high-resolution performance counter.

    Used as a context manager the timer starts on entry and stops on exit.
    Its readings are only meaningful relative to each other, never as wall
    clock times.

    Attributes:
        start_time (float): The counter value when the timer started.
        stop_time (float): The counter value when it last stopped, or None
        while it is running.
    """

    def __init__(self):
        self.start_time = None
        self.stop_time = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.stop()
        return False

    def start(self):
        self.start_time = time.perf_counter()
        self.stop_time = None

    def stop(self):
        """
        Stops the timer.

        :return: The elapsed milliseconds.
        :raise ValueError: If the timer was never started.
        """
        if self.start_time is None:
            raise ValueError("The timer has not been started.")
        self.stop_time = time.perf_counter()
        return self.elapsed_ms

    @property
    def elapsed_ms(self):
        """
        The milliseconds between the start and the stop, or up to now while
        the timer is still running.
        """
        if self.start_time is None:
            return 0.0
        end = time.perf_counter() if self.stop_time is None \
            else self.stop_time
        return (end - self.start_time) * 1000.0
