class CliError(Exception):
    pass


class ConfigError(CliError):
    pass


class IoFailureError(CliError):
    pass


class NumericFailureError(CliError):
    pass
