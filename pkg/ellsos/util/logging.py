"""
Contains the console formatting used by every ellsos command, together with
the CHECK level at which the verification suites report individual
identities.
"""
import logging
import sys

CHECK = 15

_STYLES = {
    "DEBUG": (">", "\033[33m%s\033[0m"),
    "CHECK": ("~", "\033[36m%s\033[0m"),
    "INFO": ("*", "\033[37m%s\033[0m"),
    "WARNING": ("*", "\033[93m%s\033[0m"),
    "ERROR": ("!!", "\033[91m%s\033[0m"),
    "CRITICAL": ("!!", "\033[91m%s\033[0m"),
}

_VERBOSITY = [logging.WARNING, logging.INFO, CHECK, logging.DEBUG]


class LogLevel:
    """
    Keeps track of the extra levels registered with the logging module.

    Attributes:
        _REGISTERED (dict): The registered level values by name.
    """

    _REGISTERED = dict()

    @classmethod
    def ensure(cls, name, value):
        """
        Registers the level with the specified name and value, unless it is
        already known under that value.

        :param name: The level name, e.g. CHECK.
        :param value: The numeric level.
        :raise KeyError: If the name is already taken by another value.
        """
        known = cls._REGISTERED.get(name)
        if known == value:
            return
        if known is not None:
            raise KeyError("Log level %s is registered as %d, not %d."
                           % (name, known, value))
        cls._REGISTERED[name] = value
        logging.addLevelName(value, name)


class ColoredFormatter(logging.Formatter):
    """
    Renders a record as "<symbol> (<logger>) <message>".

    The symbol encodes the level: > debug, ~ a single verification check,
    * information or warning, !! error or critical. With colour enabled the
    symbol alone is wrapped in an ANSI escape; message text is left alone.

    Attributes:
        use_color (bool): Whether escape sequences are emitted.
    """

    def __init__(self, use_color=True):
        super().__init__()
        self.use_color = use_color

    def format(self, record):
        symbol, color = _STYLES.get(record.levelname, ("?", "%s"))
        if self.use_color:
            symbol = color % symbol
        message = record.getMessage()
        if record.exc_info:
            message += "\n" + self.formatException(record.exc_info)
        return "%s (%s) %s" % (symbol, record.name, message)


def configure(verbosity=0, stream=None):
    """
    Installs a single handler on the ellsos logger.

    Verbosity 0 shows warnings, 1 adds information, 2 adds each check and 3
    or more shows debug output.

    :param verbosity: How many times --verbose was given.
    :param stream: The output stream; standard error by default.
    :return: The ellsos logger.
    """
    if stream is None:
        stream = sys.stderr
    level = _VERBOSITY[min(max(verbosity, 0), len(_VERBOSITY) - 1)]
    use_color = hasattr(stream, "isatty") and stream.isatty()

    handler = logging.StreamHandler(stream)
    handler.setFormatter(ColoredFormatter(use_color=use_color))

    logger = logging.getLogger("ellsos")
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


LogLevel.ensure("CHECK", CHECK)
