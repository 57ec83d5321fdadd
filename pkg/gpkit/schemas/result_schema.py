from marshmallow import Schema, fields


class OptimResultSchema(Schema):
    """
    Schema for serializing an optimizer run.

    Attributes:
        minimizer (List): Free parameters at the end of the run.
        minimum (Float): Negated objective at the minimizer.
    """

    initial = fields.List(fields.Float())
    minimizer = fields.List(fields.Float())
    minimum = fields.Float()
    iterations = fields.Integer()
    function_calls = fields.Integer()
    converged = fields.Boolean()
    gradient_norm = fields.Float()
    message = fields.String()


class FitResultSchema(Schema):
    """
    Schema for serializing a fitted model.

    Attributes:
        params (Dict): Parameter label to value, in get_params order.
        optimization (Nested): The optimizer run, absent when none was made.
    """

    model = fields.String()
    dim = fields.Integer()
    nobs = fields.Integer()
    params = fields.Dict(keys=fields.String(), values=fields.Float())
    log_likelihood = fields.Float()
    optimization = fields.Nested(OptimResultSchema, allow_none=True)


def fit_result(gp, optimization=None):
    """Plain dict describing gp, ready for FitResultSchema().dump."""
    return {
        "model": getattr(gp, "scheme", type(gp).__name__),
        "dim": gp.dim,
        "nobs": gp.nobs,
        "params": dict(zip(gp.param_labels(), gp.get_params())),
        "log_likelihood": gp.log_likelihood(),
        "optimization": optimization,
    }


def key_value_text(dumped):
    """
    Flatten a dumped FitResultSchema into "key = value" lines.

    Parameters are listed under their labels; optimizer fields get an
    "optim." prefix.
    """
    lines = [f"model = {dumped['model']}", f"dim = {dumped['dim']}", f"nobs = {dumped['nobs']}"]
    lines += [f"{label} = {value!r}" for label, value in dumped["params"].items()]
    lines.append(f"log_likelihood = {dumped['log_likelihood']!r}")
    optim = dumped.get("optimization")
    if optim:
        for key in ("minimum", "iterations", "function_calls", "converged", "gradient_norm"):
            lines.append(f"optim.{key} = {optim[key]}")
    return "\n".join(lines) + "\n"
