"""Strings."""

run_started = "Running {command} with seed {seed}, {chains} chains on {threads} workers"
run_finished = "{command} finished in {seconds:.2f}s"
file_written = "Wrote {path}"
config_invalid = "Invalid configuration: {error}"
numeric_failure = "Numeric failure: {error}"
unexpected_failure = "Unexpected failure in {command}"
verification_failed = "{failures} identity checks failed"
parity_adjusted = "d={d} is infeasible for n={n} (d*n odd), using d={adjusted}"
chains_clamped = "Fewer samples ({samples}) than chains ({chains}), running {samples} chains"
