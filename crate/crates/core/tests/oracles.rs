mod common;

use common::brute;
use rand::Rng;
use stratum_core::{hom_space, radical_of_module, top_dims, trace_of_vertices, Field, Submodule};

#[test]
fn hom_spaces_match_enumeration() {
    let mut checked = 0;
    for seed in 0..60 {
        let mut rng = common::rng(seed);
        let field = Field::prime(2).unwrap();
        let alg = common::random_algebra_with(field, &mut rng, 3, 4, 10);
        let n = alg.vertex_count();
        let dims = |rng: &mut rand_chacha::ChaCha8Rng| (0..n).map(|_| rng.gen_range(0..=1)).collect::<Vec<_>>();
        let (dm, dn) = (dims(&mut rng), dims(&mut rng));
        let (Some(m), Some(x)) =
            (common::random_module(&alg, &dm, &mut rng), common::random_module(&alg, &dn, &mut rng))
        else {
            continue;
        };
        let count = brute::homs(&m, &x).len();
        let dim = hom_space(&m, &x).unwrap().len();
        assert_eq!(count, 1 << dim, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} cases");
}

#[test]
fn traces_and_radicals_match_enumeration() {
    let mut checked = 0;
    for seed in 0..40 {
        let mut rng = common::rng(100 + seed);
        let field = Field::prime(2).unwrap();
        let alg = common::random_algebra_with(field, &mut rng, 3, 4, 10);
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let Some(m) = common::random_module(&alg, &dims, &mut rng) else {
            continue;
        };
        let subs = brute::submodules(&m);
        let set: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        // Smallest submodule containing M(v) for v in the set.
        let trace = subs
            .iter()
            .filter(|s| set.iter().all(|&v| s.spaces[v].is_full()))
            .fold(Submodule::full(&m), |acc, s| acc.intersect(s));
        assert_eq!(trace_of_vertices(&m, &set), trace, "seed {seed}");
        // The radical is the intersection of the maximal submodules.
        let maximal = subs.iter().filter(|s| s.total_dim() + 1 == m.total_dim());
        let rad = maximal.fold(Submodule::full(&m), |acc, s| acc.intersect(s));
        assert_eq!(radical_of_module(&m), rad, "seed {seed}");
        let top: usize = top_dims(&m).iter().sum();
        assert_eq!(top, m.total_dim() - rad.total_dim());
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} cases");
}
