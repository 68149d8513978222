use binedge::closed_form::{self, complete_graph_hilbert_series, linear_strand_betti};
use binedge::graphs::{complete_bipartite, complete_graph};
use binedge::ideals::{edge_binomials, minimal_primes, minor_ideal, prime_ideal};
use binedge::oracle::{FieldConfig, Oracle};
use binedge::Execution;
use num_bigint::BigInt;

#[test]
fn complete_graph_series_matches_oracle() {
    let o = Oracle::default();
    for r in 1..=4 {
        let vertices: Vec<usize> = (1..=r).collect();
        let ideal = minor_ideal(&vertices, r).unwrap();
        let expected = complete_graph_hilbert_series(r).unwrap().expand(5);
        let got = o.hilbert_functions(&ideal, 5).unwrap();
        assert!(expected.iter().zip(&got).all(|(e, g)| *e == BigInt::from(*g)), "r = {r}");
    }
}

#[test]
fn complete_graph_linear_strand() {
    let o = Oracle::default();
    for r in 2..=5 {
        let vertices: Vec<usize> = (1..=r).collect();
        let ideal = minor_ideal(&vertices, r).unwrap();
        for i in 1..r {
            assert_eq!(o.koszul_betti(&ideal, i, 1).unwrap(), linear_strand_betti(i, r), "r = {r}, i = {i}");
        }
    }
}

#[test]
fn complete_graph_edge_ideal_is_the_minor_ideal() {
    let o = Oracle::default();
    let g = complete_graph(4).unwrap();
    let minors = minor_ideal(&[1, 2, 3, 4], 4).unwrap();
    assert!(o.strands_equal(&edge_binomials(&g), &minors, 4).unwrap());
}

#[test]
fn decomposition_of_k22_examples() {
    let o = Oracle::default();
    let g = complete_bipartite(2, 2).unwrap();
    let primes: Vec<_> = minimal_primes(&g, Execution::default())
        .unwrap()
        .iter()
        .map(|p| prime_ideal(&g, p).unwrap())
        .collect();
    assert_eq!(primes.len(), 3);
    assert!(o.intersection_equals(&primes, &edge_binomials(&g), 6).unwrap());
    assert!(!o.intersection_equals(&primes[..2], &edge_binomials(&g), 4).unwrap());
}

#[test]
fn characteristics_agree_on_small_tables() {
    let p = Oracle::new(FieldConfig::Prime(32003));
    let q = Oracle::new(FieldConfig::Rational);
    let small = Oracle::new(FieldConfig::Prime(7));
    for (m, n) in [(2, 1), (2, 2), (3, 2)] {
        let j = edge_binomials(&complete_bipartite(m, n).unwrap());
        let t = p.betti_table(&j).unwrap();
        assert_eq!(t, q.betti_table(&j).unwrap());
        assert_eq!(t, small.betti_table(&j).unwrap());
        assert_eq!(t, closed_form::betti_table(m, n).unwrap());
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = Oracle::default().with_execution(Execution::Sequential);
    let par = Oracle::default().with_execution(Execution::Parallel);
    let j = edge_binomials(&complete_bipartite(3, 2).unwrap());
    assert_eq!(seq.betti_table(&j).unwrap(), par.betti_table(&j).unwrap());
    assert_eq!(seq.hilbert_functions(&j, 5).unwrap(), par.hilbert_functions(&j, 5).unwrap());
}

#[test]
fn regularity_and_depth_for_larger_pairs() {
    let o = Oracle::default();
    for (m, n) in [(4, 1), (3, 2)] {
        let j = edge_binomials(&complete_bipartite(m, n).unwrap());
        assert_eq!(o.depth_via_ab(&j).unwrap(), closed_form::depth(m, n).unwrap());
        assert_eq!(o.regularity_via_betti(&j).unwrap(), 2);
    }
}
