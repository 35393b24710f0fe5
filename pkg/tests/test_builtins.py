"""Builtin catalog: listing contents, parameter validation, and selector
parsing."""

import numpy as np
import pytest

from picardkit import DomainError
from picardkit.builtins import (beta_constant, catalog_text, cclass_c,
                                default_beta_probes, default_sequence_probes,
                                example31_map, map_by_name, rhs_by_name, zeta1)


class TestCatalogListing:
    def test_contains_gain_family(self):
        assert "zeta1(lambda)" in catalog_text()

    def test_contains_rational_offset_entry(self):
        assert "cclass_b: s - (2+t)t/(1+t)" in catalog_text()

    def test_contains_reference_bundle(self):
        assert "example31_bundle" in catalog_text()


class TestParameterValidation:
    def test_zeta1_range(self):
        with pytest.raises(DomainError):
            zeta1(1.0)
        with pytest.raises(DomainError):
            zeta1(0.0)

    def test_cclass_c_constraints(self):
        with pytest.raises(DomainError):
            cclass_c(k=0.5)
        with pytest.raises(DomainError):
            cclass_c(r=1.0)

    def test_beta_constant_range(self):
        with pytest.raises(DomainError):
            beta_constant(1.0)


class TestSelectors:
    def test_example31_map_branches(self):
        assert example31_map(0.9) == pytest.approx(0.3)
        assert example31_map(2.0) == 6.0

    def test_map_by_name(self):
        mapping, name = map_by_name("affine:3:0")
        assert mapping(2.0) == 6.0 and name == "affine:3:0"
        with pytest.raises(DomainError):
            map_by_name("spiral")
        with pytest.raises(DomainError):
            map_by_name("affine:1")

    def test_rhs_selectors(self):
        zero, _ = rhs_by_name("zero")
        assert np.array_equal(zero(np.linspace(0, 1, 5), np.zeros(5)), np.zeros(5))
        const, _ = rhs_by_name("const:2.5")
        assert np.array_equal(const(np.zeros(3), np.zeros(3)), np.full(3, 2.5))
        pi2sin, _ = rhs_by_name("pi2sin")
        assert pi2sin(np.array([0.5]), np.zeros(1))[0] == pytest.approx(np.pi ** 2)
        with pytest.raises(DomainError):
            rhs_by_name("const:x")
        with pytest.raises(DomainError):
            rhs_by_name("mystery")

    def test_expression_hook(self):
        rhs, _ = rhs_by_name("expr:sin(x) + t")
        t = np.array([0.0, 0.5])
        x = np.array([0.0, np.pi / 2.0])
        out = rhs(t, x)
        assert out[0] == 0.0 and out[1] == pytest.approx(1.5)


class TestDefaultProbes:
    def test_classic_probes_positive(self):
        for tn, sn in default_sequence_probes("classic"):
            assert tn.min() > 0.0 and sn.min() > 0.0

    def test_roldan_probes_ordered(self):
        for tn, sn in default_sequence_probes("roldan"):
            assert np.all(tn < sn)

    def test_beta_probes_nonnegative(self):
        for seq in default_beta_probes():
            assert seq.min() >= 0.0
