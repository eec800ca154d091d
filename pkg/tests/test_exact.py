import math

import numpy as np
import pytest

from escape_ratio.errors import InvalidAngle, StrategyFailure
from escape_ratio.exact import (
    AploParams,
    DiskAploEscaper,
    DiskArcChasingPursuer,
    aplo_position,
    disk_phi_star,
    disk_r_star,
    disk_strategies,
    halfplane_pursuer_position,
    halfplane_r_star,
    square_r_star,
    triangle_r_star,
    wedge_pursuer_position,
    wedge_r_star,
)


class TestClosedForms:
    def test_wedge_values(self):
        assert wedge_r_star(math.pi) == 1.0
        assert wedge_r_star(math.pi / 3) == pytest.approx(2.0, abs=1e-12)
        assert wedge_r_star(math.pi / 2) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_wedge_monotone_decreasing(self):
        angles = np.linspace(0.05, math.pi, 60)
        values = [wedge_r_star(a) for a in angles]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_wedge_rejects_bad_angle(self):
        with pytest.raises(InvalidAngle):
            wedge_r_star(0.0)
        with pytest.raises(InvalidAngle):
            wedge_r_star(3.5)

    def test_halfplane_cases(self):
        assert halfplane_r_star((0, 1), (0, 0)) == 1.0
        assert halfplane_r_star((1, 1), (0, 0)) == pytest.approx(math.sqrt(2))
        assert halfplane_r_star((math.sqrt(3), 1), (0, 0)) == pytest.approx(2.0)

    def test_halfplane_boundary_escaper(self):
        assert halfplane_r_star((0, 0), (0, 0)) == 1.0
        assert halfplane_r_star((1, 0), (0, 0)) == math.inf

    def test_disk_phi_star(self):
        phi = disk_phi_star()
        assert phi == pytest.approx(0.430 * math.pi, abs=2e-3)
        assert abs(math.tan(phi) - math.pi - phi) < 1e-9

    def test_disk_r_star(self):
        assert disk_r_star() == pytest.approx(4.6033, abs=1e-4)
        assert disk_r_star() == 1.0 / math.cos(disk_phi_star())

    def test_triangle_and_square(self):
        assert triangle_r_star() == pytest.approx(7.40492, abs=1e-4)
        assert square_r_star() == pytest.approx(5.78857, abs=1e-4)
        assert triangle_r_star() > square_r_star() > disk_r_star()


class TestAplo:
    def test_start_condition(self):
        p = AploParams(h0=(1.0, 2.0), axial=(0.0, 1.0), r_prime=3.0, du=0.5, dv=0.5)
        assert aplo_position(p, 0.0, 0.0) == pytest.approx((1.0, 2.0))

    def test_direct_substitution(self):
        p = AploParams(h0=(0.0, 0.0), axial=(1.0, 0.0), r_prime=4.0, du=0.6, dv=0.8)
        assert aplo_position(p, 4.0, 1.0) == pytest.approx((0.6, 0.8))

    def test_full_speed_clockwise_pursuer_stays_within_unit_speed(self):
        # clockwise full-speed progress D(t) = -r*t gives escaper velocity
        # du*axial - (r/r')*dv*lateral of magnitude at most 1
        p = AploParams(h0=(0.0, 0.0), axial=(1.0, 0.0), r_prime=4.0, du=0.6, dv=0.8)
        a = aplo_position(p, 0.0, 0.0)
        b = aplo_position(p, -4.0, 1.0)
        assert np.hypot(*(b - a)) <= 1.0 + 1e-12

    def test_memoryless_positions_equal_for_equal_progress(self):
        p = AploParams(h0=(0.0, 0.0), axial=(0.6, 0.8), r_prime=2.0, du=0.3, dv=0.9)
        # two different pursuer histories with the same net progress at t
        assert aplo_position(p, 1.25, 2.0) == pytest.approx(
            aplo_position(p, 1.25, 2.0)
        )

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            AploParams(h0=(0, 0), axial=(1, 0), r_prime=2.0, du=0.9, dv=0.9)
        with pytest.raises(ValueError):
            AploParams(h0=(0, 0), axial=(0, 0), r_prime=2.0, du=0.5, dv=0.5)
        with pytest.raises(ValueError):
            AploParams(h0=(0, 0), axial=(1, 0), r_prime=2.0, du=-0.5, dv=0.5)

    def test_lateral_is_ccw_quarter_turn(self):
        p = AploParams(h0=(0, 0), axial=(1.0, 0.0), r_prime=1.0, du=0.5, dv=0.5)
        assert p.lateral == pytest.approx((0.0, 1.0))


class TestProjectionPositions:
    def test_wedge_formula(self):
        assert wedge_pursuer_position(math.pi / 4, (1, 0.5)) == pytest.approx((0.5, 0.5))

    def test_halfplane_right_angle(self):
        assert halfplane_pursuer_position(math.pi / 2, (3.0, 7.0)) == pytest.approx((0.0, 7.0))

    def test_wedge_collocation_on_boundary(self):
        theta = math.pi / 6
        h = (2.0, 2.0 * math.tan(theta))
        assert wedge_pursuer_position(theta, h) == pytest.approx(h)


class TestDiskStrategies:
    def test_pursuer_gate_freezes_on_still_escaper(self):
        from escape_ratio.sim import DiskDomain, PathView, playthrough

        class StillEscaper:
            start_point = np.array([0.0, 0.0])
            max_speed = 1.0

            def reset(self):
                pass

            def position(self, opp, t):
                return self.start_point

        pursuer = DiskArcChasingPursuer(4.8)
        pt = playthrough(StillEscaper(), pursuer, dt=0.01, t_max=1.0,
                         epsilon=0.05, domain=DiskDomain())
        assert np.allclose(pt.pursuer_path.points, pt.pursuer_path.points[0])

    def test_strategy_pair_types(self):
        esc, purs = disk_strategies(4.4)
        assert isinstance(esc, DiskAploEscaper)
        assert isinstance(purs, DiskArcChasingPursuer)
        assert esc.dv < 1.0 and esc.du > 0.0

    def test_supercritical_parameters_stay_admissible(self):
        esc = DiskAploEscaper(6.0)
        assert math.hypot(esc.du, esc.dv) <= 1.0 + 1e-12

    def test_circling_cap_raises_against_matching_pursuer(self):
        # a pursuer that exactly mirrors the escaper's angular motion never
        # becomes antipodal; the circling phase must fail loudly
        from escape_ratio.sim import DiskDomain, playthrough

        class MirrorPursuer:
            max_speed = 6.0

            def reset(self):
                pass

            def position(self, opp, t):
                h = opp.points[-1]
                a = math.atan2(h[1], h[0])
                return np.array([math.cos(a), math.sin(a)])

        esc = DiskAploEscaper(6.0)
        with pytest.raises(StrategyFailure):
            playthrough(esc, MirrorPursuer(), dt=0.01, t_max=200.0,
                        epsilon=0.05, domain=DiskDomain())
