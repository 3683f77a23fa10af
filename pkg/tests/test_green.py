"""Tests for the one-variable Green function solver."""

import pytest

from greenfn.green import (
    SolverError,
    green_orthogonality,
    green_table,
    lusztig_shoji_solve,
    one_var_green,
)
from greenfn.qpoly import QPoly
from greenfn.springer import (
    SpringerTable,
    UnipotentClass,
    gl_levi_springer,
    gl_springer,
)

q = QPoly.q()


def w_index(sol, cycle_type):
    """Twisted class index of a cycle type in the principal coset of GL_n."""
    return sol.coset.class_labels.index((cycle_type,))


class TestGL2:
    def setup_method(self):
        self.sol = lusztig_shoji_solve(gl_springer(2), 0)

    def test_basis_order(self):
        assert [s.class_label for s in self.sol.basis] == ["2", "11"]

    def test_p_matrix(self):
        # [PAPER] the GL2 example: P = [[1, 0], [1, 1]]
        assert self.sol.p_matrix == (
            (QPoly([1]), QPoly()),
            (QPoly([1]), QPoly([1])),
        )

    def test_green_values(self):
        # [PAPER] Q_1(1) = q+1, Q_1(u) = 1, Q_s(1) = 1-q, Q_s(u) = 1
        greens = green_table(self.sol)
        g1 = greens[w_index(self.sol, (1, 1))]
        gs = greens[w_index(self.sol, (2,))]
        assert g1("11") == q + 1
        assert g1("2") == QPoly([1])
        assert gs("11") == 1 - q
        assert gs("2") == QPoly([1])

    def test_orthogonality(self):
        assert green_orthogonality(gl_springer(2), 0, self.sol)


class TestGL3:
    def setup_method(self):
        self.table = gl_springer(3)
        self.sol = lusztig_shoji_solve(self.table, 0)

    def test_p_matrix(self):
        # [DERIVED] P = [[1,0,0],[1,1,0],[1,Phi2,1]] in basis 3, 21, 111
        assert [s.class_label for s in self.sol.basis] == ["3", "21", "111"]
        assert self.sol.p_matrix == (
            (QPoly([1]), QPoly(), QPoly()),
            (QPoly([1]), QPoly([1]), QPoly()),
            (QPoly([1]), QPoly.phi(2), QPoly([1])),
        )

    def test_identity_column(self):
        # [DERIVED] values of Q_1: classical Green polynomials at mu = (1^3)
        greens = green_table(self.sol)
        g1 = greens[w_index(self.sol, (1, 1, 1))]
        assert g1("111") == QPoly.phi(2) * QPoly.phi(3)
        assert g1("21") == 2 * q + 1
        assert g1("3") == QPoly([1])

    def test_regular_row_is_one(self):
        # [DERIVED] Qt on the regular class is the constant 1
        greens = green_table(self.sol)
        for w in range(len(self.sol.coset.classes)):
            assert greens[w]("3") == QPoly([1])

    def test_order_independence(self):
        alt = lusztig_shoji_solve(self.table, 0, reverse_ties=True)
        for w in range(len(self.sol.coset.classes)):
            a = one_var_green(self.sol, w)
            b = one_var_green(alt, w)
            assert a.values == b.values

    def test_orthogonality(self):
        assert green_orthogonality(self.table, 0, self.sol)


class TestLeviBlocks:
    def test_gl2_gl1_solves_and_is_orthogonal(self):
        table = gl_levi_springer(gl_springer(3).group.levi((0,)))
        sol = lusztig_shoji_solve(table, 0)
        assert [s.class_label for s in sol.basis] == ["2,1", "11,1"]
        assert green_orthogonality(table, 0, sol)

    def test_torus_block(self):
        table = gl_levi_springer(gl_springer(2).group.levi(()))
        sol = lusztig_shoji_solve(table, 0)
        greens = green_table(sol)
        assert greens[0]("1,1") == QPoly([1])


class TestFailureModes:
    def test_corrupted_centralizer_is_caught(self):
        table = gl_springer(2)
        # same degree, wrong polynomial: q(q+1) instead of q(q-1)
        bad = UnipotentClass(
            label="2",
            dimension=table.unipotent_class("2").dimension,
            below=table.unipotent_class("2").below,
            component_group=(),
            f_classes=("1",),
            c0_order=q * (q + 1),
        )
        classes = tuple(
            bad if c.label == "2" else c for c in table.classes
        )
        broken = SpringerTable(table.group, classes, table.systems, table.blocks)
        with pytest.raises(SolverError):
            lusztig_shoji_solve(broken, 0)
