"""Tests for the two-variable Green functions and the R-matrix route."""

from greenfn.qpoly import QPoly, RatFunc
from greenfn.springer import gl_springer
from greenfn.twovar import (
    CrossPathMismatch,
    TwoVarEngine,
    green_two_var_table,
    two_var_blocksum,
    two_var_rmatrix,
)

q = QPoly.q()
one = QPoly([1])
zero = QPoly()


class TestGL2:
    def setup_method(self):
        self.tG = gl_springer(2)
        self.G = self.tG.group

    def test_torus_levi(self):
        # [DERIVED] Q(u, 1) over L = T equals Q_1(u) of the one-variable theory
        eng = TwoVarEngine(self.tG, self.G.levi(()))
        assert eng.blocksum("2", "1,1") == RatFunc(1)
        assert eng.blocksum("11", "1,1") == RatFunc(q + 1)

    def test_routes_agree(self):
        eng = TwoVarEngine(self.tG, self.G.levi(()))
        for u in ("2", "11"):
            assert eng.blocksum(u, "1,1") == eng.rmatrix(u, "1,1")

    def test_rtilde_values(self):
        # [DERIVED] Rt = (1, q+1)^T for L = T in basis (2), (11)
        eng = TwoVarEngine(self.tG, self.G.levi(()))
        pair = eng.pairs[0]
        assert pair.rtilde == ((one,), (q + 1,))

    def test_degenerate_levi_is_class_delta(self):
        # [DERIVED] Q^G_G(u, v) = delta_{u,v} / |u^{G^F}|
        eng = TwoVarEngine(self.tG, self.G.levi((0,)))
        for u in ("2", "11"):
            for v in ("2", "11"):
                expect = (
                    RatFunc(1) / RatFunc(self.tG.class_size(u))
                    if u == v
                    else RatFunc(0)
                )
                assert eng.blocksum(u, v) == expect

    def test_degenerate_rtilde_is_identity(self):
        eng = TwoVarEngine(self.tG, self.G.levi((0,)))
        assert eng.pairs[0].rtilde == ((one, zero), (zero, one))


class TestGL3Tables:
    def setup_method(self):
        self.tG = gl_springer(3)
        self.G = self.tG.group

    def test_torus_table(self):
        # [DERIVED] scaled entries |v^{L^F}| Q(u, v) for L = T
        table = green_two_var_table(self.tG, self.G.levi(()))
        assert table.entry("3", "1,1,1") == one
        assert table.entry("21", "1,1,1") == 2 * q + 1
        assert table.entry("111", "1,1,1") == QPoly.phi(2) * QPoly.phi(3)

    def test_gl2_gl1_table(self):
        table = green_two_var_table(self.tG, self.G.levi((0,)))
        assert table.cols == (("2,1", "1"), ("11,1", "1"))
        assert table.entry("3", "2,1") == one
        assert table.entry("3", "11,1") == zero
        assert table.entry("21", "2,1") == q
        assert table.entry("21", "11,1") == one
        assert table.entry("111", "2,1") == zero
        assert table.entry("111", "11,1") == QPoly.phi(3)

    def test_regular_row_law(self):
        # u regular: the scaled row is 1 at the regular class of L, else 0
        for subset in [(), (0,), (1,), (0, 1)]:
            table = green_two_var_table(self.tG, self.G.levi(subset))
            eng = TwoVarEngine(self.tG, self.G.levi(subset))
            reg_l = eng.tL.regular_label()
            for v, _ in table.cols:
                expect = one if v == reg_l else zero
                assert table.entry("3", v) == expect

    def test_degenerate_table_is_identity(self):
        table = green_two_var_table(self.tG, self.G.levi((0, 1)))
        for u, _ in table.rows:
            for v, _ in table.cols:
                assert table.entry(u, v) == (one if u == v else zero)

    def test_support_law(self):
        # nonzero entries only when u is in the closure of the induced class
        for subset in [(), (0,), (1,)]:
            L = self.G.levi(subset)
            table = green_two_var_table(self.tG, L)
            for u, _ in table.rows:
                for v, _ in table.cols:
                    if table.entry(u, v).is_zero():
                        continue
                    ind = self.tG.unipotent_class(self.tG.induced_class(L, v))
                    assert self.tG.unipotent_class(u).leq(ind)

    def test_wrapper_functions(self):
        L = self.G.levi((0,))
        assert two_var_blocksum(self.tG, L, "21", "2,1") == two_var_rmatrix(
            self.tG, L, "21", "2,1"
        )


class TestSerialization:
    def test_csv_and_json(self):
        tG = gl_springer(2)
        table = green_two_var_table(tG, tG.group.levi(()))
        csv_text = table.to_csv()
        assert csv_text.splitlines()[0] == 'u\\v,"1,1:1"'
        doc = table.to_json()
        assert doc["group"] == "GL2"
        assert doc["entries"] == [["1"], ["Phi2"]]
        # identical inputs give identical bytes
        assert table.to_csv() == green_two_var_table(tG, tG.group.levi(())).to_csv()

    def test_mismatch_exception_type(self):
        assert issubclass(CrossPathMismatch, ArithmeticError)
