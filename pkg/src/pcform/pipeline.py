"""Complex -> adapted basis -> canonical form -> pairing, in one call."""

from __future__ import annotations

from dataclasses import dataclass

from .barcode import Barcode, Pairing, Summand, barcodes, extract_pairing, summands
from .complex import AdaptedBasis, FilteredChainComplex, FilteredComplex, Ordering, adapted_basis, boundary_matrix
from .field import QQ, FieldSpec
from .matrix.reduction import ReductionResult, standard_reduction


@dataclass(frozen=True, eq=False)
class Persistence:
    basis: AdaptedBasis
    result: ReductionResult
    pairing: Pairing

    def barcodes(self, drop_empty: bool = True) -> list[Barcode]:
        return barcodes(self.pairing, self.basis, drop_empty)

    def summands(self) -> list[Summand]:
        return summands(self.pairing, self.basis)


def persistence(
    fc: FilteredComplex | FilteredChainComplex,
    field: FieldSpec = QQ,
    ordering: Ordering | str = Ordering.DEGREE_MAJOR,
    strategy: str = "sweep",
) -> Persistence:
    if isinstance(fc, FilteredChainComplex):
        basis = fc.basis()
        d = fc.boundary_matrix()
    else:
        basis = adapted_basis(fc, ordering)
        d = boundary_matrix(fc, basis, field)
    result = standard_reduction(d, strategy=strategy)
    return Persistence(basis, result, extract_pairing(result.Dcanon, basis))
