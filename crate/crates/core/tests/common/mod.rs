//! Random fixtures and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

pub mod brute;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stratum_core::{
    build_algebra, hom_space, quotient_module, submodule_as_module, BoundAlgebra, Field, Mat, ModuleMap, Quiver,
    Relation, RightModule, Scalar, StratPlan, Stratification, Submodule,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let rows: Vec<Vec<Scalar>> = (0..rows).map(|_| (0..cols).map(|_| scalar(field, rng)).collect()).collect();
    Mat::from_rows(field, cols, rows).unwrap()
}

/// A random bound quiver algebra: up to `max_vertices` vertices and
/// `max_arrows` arrows, every path of length `K ∈ {2, 3}` set to zero plus
/// some random length-two monomials. Resampled until its dimension is at most
/// `max_dim`.
pub fn random_algebra_with(
    field: Field,
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_arrows: usize,
    max_dim: usize,
) -> BoundAlgebra {
    loop {
        let nv = rng.gen_range(1..=max_vertices);
        let na = rng.gen_range(0..=max_arrows);
        let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
        let arrows: Vec<(String, String, String)> = (0..na)
            .map(|i| {
                let s = rng.gen_range(0..nv);
                let t = rng.gen_range(0..nv);
                (format!("x{i}"), names[s].clone(), names[t].clone())
            })
            .collect();
        let q = Quiver::new(names, arrows).unwrap();
        let k = rng.gen_range(2..=3);
        let mut rels = Vec::new();
        for p in q.paths_of_length(k) {
            rels.push(Relation::monomial(&q, field.one(), p.arrows).unwrap());
        }
        if k == 3 {
            for p in q.paths_of_length(2) {
                if rng.gen_bool(0.4) {
                    rels.push(Relation::monomial(&q, field.one(), p.arrows).unwrap());
                }
            }
        }
        let alg = build_algebra(q, rels, field, k).expect("long paths are relations");
        if alg.dim() <= max_dim {
            return alg;
        }
    }
}

pub fn random_algebra(field: Field, rng: &mut ChaCha8Rng) -> BoundAlgebra {
    random_algebra_with(field, rng, 4, 5, 16)
}

/// A random ordered partition of `0..n` into nonempty strata.
pub fn random_plan(n: usize, rng: &mut ChaCha8Rng) -> StratPlan {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let k = if n == 0 { 0 } else { rng.gen_range(1..=n) };
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k.saturating_sub(1)).collect();
    cuts.sort_unstable();
    let mut strata = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        if c > start {
            strata.push(perm[start..c].to_vec());
        }
        start = c;
    }
    StratPlan::new(n, strata).unwrap()
}

pub fn random_stratification(field: Field, rng: &mut ChaCha8Rng) -> Stratification {
    let alg = random_algebra(field, rng);
    let plan = random_plan(alg.vertex_count(), rng);
    Stratification::new(alg, plan).unwrap()
}

/// A random element of the span of `maps`.
pub fn random_combination(maps: &[ModuleMap], zero: ModuleMap, field: Field, rng: &mut ChaCha8Rng) -> ModuleMap {
    maps.iter().fold(zero, |acc, f| acc.add(&f.scale(&scalar(field, rng))))
}

/// A module with a known Δ-filtration, built by repeated pushouts.
pub struct Built {
    pub module: RightModule,
    /// `0 = E_0 ⊆ E_1 ⊆ ... ⊆ E_k`, one standard per layer.
    pub chain: Vec<Submodule>,
    /// Number of layers isomorphic to `Δ_v`, per vertex `v`.
    pub counts: Vec<usize>,
}

/// Stacks `layers` random standard modules. Each step forms the pushout of
/// `U ↪ eΛ` along a random `g: U -> N`, giving `0 -> N -> E -> Δ_e -> 0`.
pub fn random_extension(s: &Stratification, layers: usize, rng: &mut ChaCha8Rng) -> Built {
    let alg = s.algebra();
    let field = alg.field();
    let standards = s.standard_modules();
    let mut module = RightModule::zero(alg);
    let mut chain = vec![Submodule::zero(&module)];
    let mut counts = vec![0; alg.vertex_count()];
    for _ in 0..layers {
        let d = standards.choose(rng).expect("at least one vertex");
        let (u, incl) = submodule_as_module(&d.projective, &d.kernel);
        let homs = hom_space(&u, &module).unwrap();
        let g = random_combination(&homs, ModuleMap::zero(&u, &module), field, rng);
        let sum = module.direct_sum(&d.projective).unwrap();
        // u ↦ (g(u), -u) inside N ⊕ P.
        let glue = ModuleMap {
            components: (0..alg.vertex_count())
                .map(|v| stack(&g.components[v], &incl.components[v].scale(&field.from_i64(-1))))
                .collect(),
        };
        let k = glue.image(&sum);
        let (e, proj) = quotient_module(&sum, &k).unwrap();
        let into_e = ModuleMap {
            components: (0..alg.vertex_count())
                .map(|v| {
                    let first = Mat::identity(field, module.dim_at(v));
                    let zeros = Mat::zeros(field, d.projective.dim_at(v), module.dim_at(v));
                    proj.components[v].mul(&stack(&first, &zeros)).unwrap()
                })
                .collect(),
        };
        chain = chain.iter().map(|c| c.image(&into_e)).collect();
        chain.push(Submodule::full(&e));
        counts[d.vertex] += 1;
        module = e;
    }
    Built { module, chain, counts }
}

/// `[top; bottom]`.
pub fn stack(top: &Mat, bottom: &Mat) -> Mat {
    assert_eq!(top.cols(), bottom.cols());
    let mut rows = top.row_vectors();
    rows.extend(bottom.row_vectors());
    Mat::from_rows(top.field(), top.cols(), rows).unwrap()
}

/// A random module of the given dimension vector satisfying the relations,
/// or `None` after a bounded number of attempts.
pub fn random_module(alg: &BoundAlgebra, dims: &[usize], rng: &mut ChaCha8Rng) -> Option<RightModule> {
    let field = alg.field();
    for _ in 0..40 {
        let actions = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                // Sparse matrices satisfy monomial relations far more often.
                let m = random_matrix(field, dims[a.source], dims[a.target], rng);
                if rng.gen_bool(0.3) {
                    Mat::zeros(field, dims[a.source], dims[a.target])
                } else {
                    m
                }
            })
            .collect();
        let m = RightModule::new(alg.quiver().clone(), field, dims.to_vec(), actions).ok()?;
        if m.validate(alg).is_ok() {
            return Some(m);
        }
    }
    None
}

/// Loops `a_i` at every vertex and arrows `b_i: i -> i+1`, with every path of
/// length two set to zero.
pub fn ladder(n: usize, field: Field) -> BoundAlgebra {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        arrows.push((format!("a{i}"), names[i].clone(), names[i].clone()));
        if i + 1 < n {
            arrows.push((format!("b{i}"), names[i].clone(), names[i + 1].clone()));
        }
    }
    let q = Quiver::new(names, arrows).unwrap();
    let rels =
        q.paths_of_length(2).into_iter().map(|p| Relation::monomial(&q, field.one(), p.arrows).unwrap()).collect();
    build_algebra(q, rels, field, 3).unwrap()
}

/// Every orientation of the linear quiver on `n` vertices, without relations.
pub fn linear_orientations(n: usize, field: Field) -> Vec<BoundAlgebra> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    (0..1u32 << n.saturating_sub(1))
        .map(|mask| {
            let arrows: Vec<(String, String, String)> = (0..n - 1)
                .map(|i| {
                    let (s, t) = if mask >> i & 1 == 0 { (i, i + 1) } else { (i + 1, i) };
                    (format!("a{i}"), names[s].clone(), names[t].clone())
                })
                .collect();
            let q = Quiver::new(names.clone(), arrows).unwrap();
            build_algebra(q, Vec::new(), field, n + 1).unwrap()
        })
        .collect()
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |at| {
                let mut q = p.clone();
                q.insert(at, n - 1);
                q
            })
        })
        .collect()
}
