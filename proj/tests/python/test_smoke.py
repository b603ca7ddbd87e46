import math

import pytest

import qglap


def test_path_spectrum_is_m_pi_over_length():
    gen = qglap.make_path(4)
    spec = qglap.full_spectrum_secular(gen.graph, gen.metric, 6.0)
    ks = [e.k for e in spec.entries for _ in range(e.multiplicity)]
    assert len(ks) == 7  # floor(6 * 4 / pi)
    for m, k in enumerate(ks, start=1):
        assert k == pytest.approx(m * math.pi / 4, abs=1e-10)


def test_braid_decomposes_into_four_branches():
    gen = qglap.make_braid(5)
    bal = qglap.balance(gen.graph, gen.metric)
    dec = qglap.decompose_discrete(bal.graph)
    assert len(dec.branches) == 4
    assert sum(b.chain_length() for b in dec.branches) == bal.graph.total_vertices()
    spheres = sorted(b.n_r for b in dec.branches)
    assert spheres == [0, 2, 3, 3]


def test_antitree_radial_jumps():
    sizes = [1, 2, 3, 2]
    gen = qglap.make_antitree(sizes)
    dec = qglap.decompose_discrete(gen.graph)
    radial = dec.branches[0]
    assert radial.n_r == 0
    op = qglap.build_reduced_operator(gen.graph, gen.metric, radial)
    for jump in op.jumps:
        want = math.sqrt(sizes[jump.j + 1] / sizes[jump.j - 1])
        assert jump.d == pytest.approx(want, abs=1e-14)
        assert jump.c == pytest.approx(1.0 / want, abs=1e-14)


def test_full_pipeline_matches_reduced_union():
    gen = qglap.make_antitree([1, 2, 3])
    bal = qglap.balance(gen.graph, gen.metric)
    dec = qglap.decompose_discrete(bal.graph)
    parts = [
        qglap.reduced_spectrum(
            qglap.build_reduced_operator(bal.graph, bal.metric, b), 8.0, f"branch-{b.r}"
        )
        for b in dec.branches
    ]
    full = qglap.full_spectrum_secular(bal.graph, bal.metric, 8.0)
    report = qglap.compare_spectra(full, parts, 1e-8)
    assert report.pass_
    assert not report.unmatched_full
    assert not report.unmatched_parts


def test_symmetry_classifier():
    yes = qglap.check_family_preserving(qglap.make_braid(5).graph)
    assert yes["family_preserving"] == "yes"
    no = qglap.check_family_preserving(qglap.make_cyclic_quartet(4).graph)
    assert no["family_preserving"] == "no"
    assert no["failing_pair"]["forward"] is True


def test_json_round_trip():
    gen = qglap.make_radial_tree([1, 2, 2])
    text = qglap.graph_to_json(gen.graph, gen.metric)
    graph, metric = qglap.graph_from_json(text)
    assert graph.sphere_sizes == gen.graph.sphere_sizes
    assert metric.lengths == gen.metric.lengths


def test_errors_are_typed():
    with pytest.raises(qglap.QglapError):
        qglap.make_antitree([2, 2])
