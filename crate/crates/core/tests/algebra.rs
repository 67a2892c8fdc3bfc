#[path = "support/randalg.rs"]
mod randalg;

use lieforge::algebra::Scope;
use lieforge::corpus;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn checker_failures(a: &lieforge::AlgebraInstance) -> Vec<[usize; 3]> {
    a.check_jacobi(Scope::All)
        .violations
        .iter()
        .map(|v| v.triple.each_ref().map(|g| a.position(g).unwrap()))
        .collect()
}

#[test]
fn jacobi_checker_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut algebras = corpus::lie_corpus();
    for i in 0..20 {
        let dim = 2 + i % 5;
        algebras.push(randalg::random_table(&mut rng, dim, 0.4));
    }
    let mut nonzero = 0;
    for a in &algebras {
        let oracle = randalg::naive_jacobi_failures(&randalg::dense_constants(a));
        nonzero += usize::from(!oracle.is_empty());
        assert_eq!(checker_failures(a), oracle, "{}", a.name());
    }
    assert!(nonzero >= 10, "random tables should mostly fail Jacobi");
}

#[test]
fn basis_changes_preserve_jacobi_and_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in corpus::lie_corpus().into_iter().filter(|a| a.dim() >= 2) {
        let p = randalg::random_invertible(&mut rng, a.dim());
        let b = randalg::change_basis(&a, &p, "moved");
        assert!(b.check_jacobi(Scope::All).passes());
        assert_eq!(a.center().dim(), b.center().dim());
        assert_eq!(a.derived_subalgebra().len(), b.derived_subalgebra().len());
        assert_eq!(a.is_two_step_solvable(), b.is_two_step_solvable());
    }
}

#[test]
fn corpus_center_and_derived_values() {
    assert_eq!(corpus::heisenberg().center().dim(), 1);
    assert_eq!(corpus::sl2().center().dim(), 0);
    assert_eq!(corpus::sl2().derived_subalgebra().len(), 3);
    assert_eq!(corpus::filiform4().derived_subalgebra().len(), 2);
    assert!(corpus::filiform4().is_two_step_solvable());
    assert!(!corpus::sl2().is_two_step_solvable());
}
