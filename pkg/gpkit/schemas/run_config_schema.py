from dataclasses import dataclass, field, fields as dataclass_fields

from marshmallow import RAISE, Schema, ValidationError, fields, post_load, validate, validates_schema

from gpkit.errors import ConfigurationError
from gpkit.models.sparse import SCHEMES

GROUPS = ("noise", "mean", "kernel", "lik")
_SCHEME_NAMES = {s.lower(): s for s in SCHEMES}

# Benchmark kernels; the last expression is timed twice in the published table, once here.
BENCH_KERNELS = (
    "fix(SE(0.0,0.0), lsigma)",
    "SE(0.0,0.0)",
    "Matern(1/2,0.0,0.0)",
    "masked(SE(0.0,0.0), [1])",
    "RQ(0.0,0.0,0.0)",
    "SE(0.0,0.0) + RQ(0.0,0.0,0.0)",
    "masked(SE(0.0,0.0), [1]) + masked(RQ(0.0,0.0,0.0), collect(2:10))",
    "(SE(0.0,0.0) + SE(0.5,0.5)) * RQ(0.0,0.0,0.0)",
    "SE(0.0,0.0) * RQ(0.0,0.0,0.0)",
)


@dataclass
class RunConfig:
    """
    Everything a command needs, after validation.

    Attributes mirror the command-line flags; see RunConfigSchema for
    defaults and allowed values.
    """

    data: str = None
    x_cols: list = None
    y_col: str = None
    kernel: str = "SE(0.0,0.0)"
    mean: str = "MeanZero()"
    lik: str = None
    log_noise: float = -2.0
    optimize: bool = True
    freeze: list = field(default_factory=list)
    max_iterations: int = None
    scheme: str = "FITC"
    inducing: str = None
    blocks: str = "nearest"
    grid: str = None
    latent: bool = False
    epsilon: float = None
    lmin: int = None
    lmax: int = None
    n_iter: int = None
    burn: int = None
    thin: int = None
    seed: int = 0
    out: str = "."
    bench_kernels: list = field(default_factory=lambda: list(BENCH_KERNELS))
    bench_n: int = 3000
    bench_runs: int = 10
    sparse_n: int = 5000
    sparse_m: int = 12

    @property
    def flags(self):
        """Optimizer and sampler group flags from the freeze list."""
        return dict(noise="noise" not in self.freeze, domean="mean" not in self.freeze,
                    kern="kernel" not in self.freeze, lik="lik" not in self.freeze)

    @property
    def hmc_overrides(self):
        pairs = dict(epsilon=self.epsilon, Lmin=self.lmin, Lmax=self.lmax, n_iter=self.n_iter,
                     burn=self.burn, thin=self.thin)
        return {k: v for k, v in pairs.items() if v is not None}


def _split(separator):
    def convert(value):
        if value is None or isinstance(value, (list, tuple)):
            return value
        return [part.strip() for part in str(value).split(separator) if part.strip()]
    return convert


class _ListField(fields.Field):
    """A list given either as a list or as a separated string."""

    def __init__(self, separator=",", **kwargs):
        super().__init__(**kwargs)
        self.convert = _split(separator)

    def _deserialize(self, value, attr, data, **kwargs):
        items = self.convert(value)
        if items is None:
            return None
        return [str(item) for item in items]


class RunConfigSchema(Schema):
    """
    Validates a run configuration merged from a key-value file and flags.

    Unknown keys are rejected so a misspelt option never silently falls back
    to its default.
    """

    class Meta:
        unknown = RAISE

    data = fields.String(allow_none=True)
    x_cols = _ListField(allow_none=True)
    y_col = fields.String(allow_none=True)
    kernel = fields.String(validate=validate.Length(min=1))
    mean = fields.String(validate=validate.Length(min=1))
    lik = fields.String(allow_none=True)
    log_noise = fields.Float(allow_nan=False)
    optimize = fields.Boolean()
    freeze = _ListField(validate=validate.ContainsOnly(GROUPS))
    max_iterations = fields.Integer(allow_none=True, validate=validate.Range(min=1))
    scheme = fields.String(validate=lambda s: s.lower() in _SCHEME_NAMES)
    inducing = fields.String(allow_none=True)
    blocks = fields.String()
    grid = fields.String(allow_none=True)
    latent = fields.Boolean()
    epsilon = fields.Float(allow_none=True, validate=validate.Range(min=0, min_inclusive=False))
    lmin = fields.Integer(allow_none=True, validate=validate.Range(min=1))
    lmax = fields.Integer(allow_none=True, validate=validate.Range(min=1))
    n_iter = fields.Integer(allow_none=True, validate=validate.Range(min=1))
    burn = fields.Integer(allow_none=True, validate=validate.Range(min=0))
    thin = fields.Integer(allow_none=True, validate=validate.Range(min=1))
    seed = fields.Integer(validate=validate.Range(min=0))
    out = fields.String()
    bench_kernels = _ListField(separator=";", validate=validate.Length(min=1))
    bench_n = fields.Integer(validate=validate.Range(min=2))
    bench_runs = fields.Integer(validate=validate.Range(min=1))
    sparse_n = fields.Integer(validate=validate.Range(min=2))
    sparse_m = fields.Integer(validate=validate.Range(min=1))

    @validates_schema
    def check_ranges(self, data, **kwargs):
        lmin, lmax = data.get("lmin"), data.get("lmax")
        if lmin is not None and lmax is not None and lmin > lmax:
            raise ValidationError("lmin must not exceed lmax", "lmin")
        if data.get("sparse_m", 12) > data.get("sparse_n", 5000):
            raise ValidationError("more inducing points than observations", "sparse_m")

    @post_load
    def make_config(self, data, **kwargs):
        if "scheme" in data:
            data["scheme"] = _SCHEME_NAMES[data["scheme"].lower()]
        return RunConfig(**data)


def read_config_file(path):
    """
    Read a flat key = value file. Blank lines and lines starting with # are skipped.

    Returns:
        dict of raw string values, keys normalized to underscores.
    """
    values = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {path}: {e.strerror}")
    for number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        key, sep, value = text.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(f"{path}, line {number}: expected key = value")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def load_run_config(file_values=None, **flags):
    """
    Merge config-file values with command-line flags (flags win) and validate.

    Flags that are None were not given and leave the file value in place.

    Raises:
        ConfigurationError: listing the first invalid key.
    """
    merged = dict(file_values or {})
    merged.update({k: v for k, v in flags.items() if v is not None})
    known = {f.name for f in dataclass_fields(RunConfig)}
    try:
        return RunConfigSchema().load(merged)
    except ValidationError as e:
        messages = e.normalized_messages()
        key = sorted(messages)[0]
        detail = messages[key]
        detail = "; ".join(str(d) for d in detail) if isinstance(detail, list) else str(detail)
        hint = "" if key in known or key == "_schema" else " (unknown key)"
        raise ConfigurationError(f"invalid configuration {key!r}{hint}: {detail}")
