from toposlang.heyting import FULL_PLANE, ZERO_SUBSPACE, ray_label, subspace_lattice_2d
from toposlang.prop.demo import excluded_middle_demo, nondistributivity_demo


def test_span_and_intersection_oracle():
    # oracle: rational linear algebra on the three rays
    lat = subspace_lattice_2d([(1, 0), (0, 1), (1, 1)])
    b, c = ray_label((0, 1)), ray_label((1, 1))
    assert lat.join(b, c) == FULL_PLANE  # (0,1) and (1,1) span the plane
    assert lat.meet(ray_label((1, 0)), b) == ZERO_SUBSPACE


def test_nondistributivity_demo_report():
    report = nondistributivity_demo()
    assert report.lhs == "ray(1,0)"
    assert report.rhs == "0"
    assert not report.distributive
    payload = report.to_json()
    assert payload["lhs"] == "ray(1,0)" and payload["rhs"] == "0"
    assert payload["join_bc"] == "plane"


def test_excluded_middle_demo_payload():
    payload = excluded_middle_demo()
    assert payload["powerset"]["law_holds_everywhere"] is True
    assert payload["sierpinski_witness"]["alpha"] == ["1"]
    assert payload["sierpinski_witness"]["alpha_or_not_alpha"] == ["1"]
    assert payload["two_point_sieve_witness"]["alpha"] == ["le[p,q]"]
    assert payload["two_point_sieve_witness"]["alpha_or_not_alpha"] == ["le[p,q]"]
