from gpkit.means.base import MeanFunction, ProdMean, SumMean
from gpkit.means.functions import MeanConst, MeanLin, MeanPoly, MeanZero

__all__ = ["MeanFunction", "SumMean", "ProdMean", "MeanZero", "MeanConst", "MeanLin", "MeanPoly"]
