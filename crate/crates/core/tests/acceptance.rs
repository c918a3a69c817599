//! Acceptance gate: one PASS/FAIL/SKIP line per criterion.
//!
//! The lines are written straight to stdout, so plain `cargo test` shows
//! them. Criterion 9 needs external data in the directory named by
//! `LCD_EXTERNAL_DATA` (see `external_data` below).

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use lcd_core::code::{classical_lcd_check, decode_naive, ProjectionDecoder, SubspaceCode, Verdict};
use lcd_core::constructions::{
    algebra_closure, build_block, bush_schemes, murh_scheme, theorem_pipeline, CodeOptions, PartitionSpec,
    PipelineInput, PipelineOptions, TheoremKind,
};
use lcd_core::drg::{distance_matrices, families, intersection_array, orbit_partition, DrgResult, Graph, PermutationGroup};
use lcd_core::field::FieldSpec;
use lcd_core::formats::{parse_graph, parse_group, parse_matrices, read_file};
use lcd_core::hadamard::{
    are_unbiased, gramian_b, order4_hadamards, search_unbiased_extension, MatrixKind, Nonexistence, SearchOptions,
    SearchOutcome, UnbiasedSet,
};
use lcd_core::linalg::{IntMatrix, MatrixFq};
use lcd_core::scheme::{
    divisibility_screen, quotient_matrices, verify_equitable, verify_quotient_algebra, AssociationScheme,
    EquitablePartition,
};
use lcd_core::simulator::{run_experiment, ChannelSpec};
use lcd_core::subspace::Subspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u64, u32); 5] = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)];
const BUSH_PAIR: &str = include_str!("../data/bush16_pair.txt");

enum Outcome {
    Pass(String),
    Skip(String),
}

fn fields() -> Vec<FieldSpec> {
    FIELDS.iter().map(|&(p, r)| FieldSpec::new(p, r).unwrap()).collect()
}

fn rand_matrix(f: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.order())).collect();
    MatrixFq::from_vec(f, rows, cols, data).unwrap()
}

fn rand_full_rank(f: &FieldSpec, k: usize, n: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
    loop {
        let m = rand_matrix(f, k, n, rng);
        if m.rank() == k {
            return m;
        }
    }
}

fn rand_lcd_subspace(f: &FieldSpec, k: usize, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    loop {
        let s = Subspace::row_space(&rand_full_rank(f, k, n, rng));
        if s.intersect(&s.dual()).unwrap().dim() == 0 {
            return s;
        }
    }
}

// 1 ----------------------------------------------------------------------

fn criterion1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in fields() {
        let q = f.order();
        let p = f.p() as u64;
        for _ in 0..1000 {
            let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
            assert_eq!(f.pow(f.mul(a, b), p), f.mul(f.pow(a, p), f.pow(b, p)));
            assert_eq!(f.pow(a, q as u64), a);

            let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=8));
            let m = rand_matrix(&f, rows, cols, &mut rng);
            let r = m.rref();
            assert_eq!(r.matrix.rref().matrix, r.matrix);
            assert_eq!(m.rank(), m.transpose().rank());
            assert_eq!(r.rank(), m.rank());

            let n = rng.gen_range(1..=5);
            let (x, y) = (rand_matrix(&f, n, n, &mut rng), rand_matrix(&f, n, n, &mut rng));
            let (dx, dy) = (x.det().unwrap(), y.det().unwrap());
            assert_eq!(x.mul(&y).unwrap().det().unwrap(), f.mul(dx, dy));
            assert_eq!(x.transpose().det().unwrap(), dx);
            assert_eq!(dx != 0, x.rank() == n);
            if let Some(inv) = x.inverse().unwrap() {
                assert_eq!(x.mul(&inv).unwrap(), MatrixFq::identity(&f, n));
            }
        }
    }
    Outcome::Pass("5 fields x 1000 cases".into())
}

// 2 ----------------------------------------------------------------------

fn criterion2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut lcd, mut not_lcd) = (0, 0);
    for f in fields() {
        for _ in 0..1000 {
            let n = rng.gen_range(2..=12);
            let k = rng.gen_range(1..n);
            let g = rand_full_rank(&f, k, n, &mut rng);
            let det_route = classical_lcd_check(&g).unwrap();
            let s = Subspace::row_space(&g);
            let hull_route = s.intersect(&s.dual()).unwrap().dim() == 0;
            assert_eq!(det_route, hull_route, "disagreement over F_{} on {:?}", f.order(), g.to_rows());
            if det_route {
                lcd += 1;
            } else {
                not_lcd += 1;
            }
        }
    }
    assert!(lcd > 0 && not_lcd > 0);
    Outcome::Pass(format!("0 disagreements in 5000 codes ({lcd} LCD, {not_lcd} not)"))
}

// 3 ----------------------------------------------------------------------

fn criterion3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in fields() {
        for _ in 0..1000 {
            let n = rng.gen_range(2..=8);
            let u = rand_lcd_subspace(&f, rng.gen_range(1..n), n, &mut rng);
            let cdim = rng.gen_range(0..=n);
            let c = Subspace::row_space(&rand_matrix(&f, cdim, n, &mut rng));
            let proj = u.projector_complement().unwrap();
            let pi = c.basis().mul(&proj).unwrap().rank();
            let formula = u.dim() + 2 * pi - c.dim();
            let direct = u.sum(&c).unwrap().dim() - u.intersect(&c).unwrap().dim();
            assert_eq!(formula, direct);
            assert_eq!(u.distance(&c).unwrap(), direct);
        }
    }
    Outcome::Pass("exact on 5 fields x 1000 pairs".into())
}

// 4 ----------------------------------------------------------------------

fn random_lcd_code(f: &FieldSpec, rng: &mut ChaCha8Rng) -> SubspaceCode {
    let n = rng.gen_range(4..=8);
    let constant = rng.gen_bool(0.5);
    let k0 = rng.gen_range(1..n);
    let target = rng.gen_range(2..=6);
    let mut words: Vec<Subspace> = Vec::new();
    let mut attempts = 0;
    while words.len() < target && attempts < 200 {
        attempts += 1;
        let k = if constant { k0 } else { rng.gen_range(1..n) };
        let cand = rand_lcd_subspace(f, k, n, rng);
        let ok = words.iter().all(|w| {
            cand.intersect(&w.dual()).unwrap().dim() == 0 && w.intersect(&cand.dual()).unwrap().dim() == 0
        });
        if ok && !words.contains(&cand) {
            words.push(cand);
        }
    }
    let code = SubspaceCode::new(words).unwrap();
    assert!(code.is_lcd_subspace_code().unwrap().lcd);
    code
}

fn criterion4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut cases, mut failures, mut engineered) = (0, 0, 0);
    for f in fields() {
        for _ in 0..200 {
            let code = random_lcd_code(&f, &mut rng);
            let proj = ProjectionDecoder::new(&code).unwrap();
            let n = code.ambient_dim();
            let received = match rng.gen_range(0..4) {
                // the zero subspace is equidistant from all words of equal dimension
                0 => {
                    engineered += 1;
                    Subspace::zero(&f, n)
                }
                1 => Subspace::full(&f, n),
                2 => {
                    let w = &code.codewords()[rng.gen_range(0..code.len())];
                    let extra = rand_matrix(&f, 1, n, &mut rng);
                    w.sum(&Subspace::row_space(&extra)).unwrap()
                }
                _ => {
                    let d = rng.gen_range(0..=n);
                    Subspace::row_space(&rand_matrix(&f, d, n, &mut rng))
                }
            };
            let a = decode_naive(&code, &received).unwrap();
            let b = proj.decode(&received).unwrap();
            assert_eq!(a, b);
            if a.verdict == Verdict::Failure {
                failures += 1;
            }
            cases += 1;
        }
    }
    assert!(failures > 0, "no tie was produced");
    Outcome::Pass(format!("0 disagreements in {cases} cases ({failures} failures, {engineered} engineered ties)"))
}

// 5 ----------------------------------------------------------------------

fn translations(n: usize, vs: &[usize]) -> PermutationGroup {
    PermutationGroup::new(n, vs.iter().map(|&v| (0..n).map(|x| x ^ v).collect()).collect()).unwrap()
}

fn rotation(n: usize, step: usize) -> PermutationGroup {
    PermutationGroup::new(n, vec![(0..n).map(|x| (x + step) % n).collect()]).unwrap()
}

struct Fixture {
    name: &'static str,
    scheme: AssociationScheme,
    partitions: Vec<EquitablePartition>,
}

fn drg_fixture(name: &'static str, g: Graph, groups: Vec<PermutationGroup>) -> Fixture {
    let scheme = AssociationScheme::from_matrices(distance_matrices(&g).unwrap()).unwrap();
    let n = g.vertex_count();
    let mut partitions = vec![EquitablePartition::singletons(n), EquitablePartition::one_cell(n)];
    for grp in groups {
        partitions.push(orbit_partition(&grp, &g).unwrap().partition);
    }
    Fixture { name, scheme, partitions }
}

fn bush_pair() -> Vec<IntMatrix> {
    parse_matrices(BUSH_PAIR).unwrap().into_iter().map(|m| m.into_int().unwrap()).collect()
}

fn fixtures() -> Vec<Fixture> {
    let mut out = vec![
        drg_fixture("Petersen", families::petersen(), vec![]),
        drg_fixture("Q3", families::hypercube(3), vec![translations(8, &[7])]),
        drg_fixture("Q4", families::hypercube(4), vec![translations(16, &[15]), translations(16, &[3, 12])]),
        drg_fixture("C6", families::cycle(6), vec![rotation(6, 3), rotation(6, 2)]),
        drg_fixture("C7", families::cycle(7), vec![rotation(7, 1)]),
        drg_fixture("K5", families::complete(5), vec![]),
        drg_fixture("K33", families::complete_bipartite(3), vec![]),
        drg_fixture("K44", families::complete_bipartite(4), vec![]),
    ];
    let set = UnbiasedSet::new(MatrixKind::Hadamard, bush_pair()).unwrap();
    let g = gramian_b(&set).unwrap();
    let murh = murh_scheme(&g).unwrap().scheme;
    let bush = bush_schemes(&set).unwrap();
    let pts = |s: &AssociationScheme| s.points();
    out.push(Fixture {
        name: "3-class order 16",
        partitions: vec![EquitablePartition::singletons(pts(&murh)), EquitablePartition::one_cell(pts(&murh))],
        scheme: murh,
    });
    out.push(Fixture {
        name: "5-class order 16",
        partitions: vec![EquitablePartition::singletons(48), EquitablePartition::one_cell(48)],
        scheme: bush.five,
    });
    out.push(Fixture {
        name: "8-class order 16",
        partitions: vec![
            EquitablePartition::singletons(96),
            EquitablePartition::one_cell(96),
            EquitablePartition::consecutive_blocks(96, 4).unwrap(),
        ],
        scheme: bush.eight,
    });
    out
}

fn criterion5() -> Outcome {
    let arrays = [(families::petersen(), vec![3, 2], vec![1, 1]), (families::hypercube(3), vec![3, 2, 1], vec![1, 2, 3])];
    for (g, b, c) in arrays {
        let DrgResult::Drg(arr) = intersection_array(&g).unwrap() else { panic!("not distance-regular") };
        assert_eq!((0..arr.diameter()).map(|i| arr.b(i)).collect::<Vec<_>>(), b);
        assert_eq!((1..=arr.diameter()).map(|i| arr.c(i)).collect::<Vec<_>>(), c);
        // numbers from the array agree with counting in the graph
        let scheme = AssociationScheme::from_matrices(distance_matrices(&g).unwrap()).unwrap();
        assert_eq!(&arr.intersection_numbers().unwrap(), scheme.intersection_numbers());
    }
    let mut pairs = 0;
    for fx in fixtures() {
        let s = &fx.scheme;
        let a = s.adjacency();
        let d = s.classes();
        for i in 0..=d {
            for j in 0..=d {
                let mut rhs = IntMatrix::zeros(s.points(), s.points());
                for (k, ak) in a.iter().enumerate() {
                    rhs = rhs.add(&ak.scale(s.p(i, j, k)).unwrap()).unwrap();
                }
                assert_eq!(a[i].mul(&a[j]).unwrap(), rhs, "{}: A_{i} A_{j}", fx.name);
            }
        }
        for part in &fx.partitions {
            assert!(verify_equitable(part, a).unwrap().equitable, "{}", fx.name);
            let quot = quotient_matrices(part, a).unwrap();
            assert_eq!(verify_quotient_algebra(s.intersection_numbers(), &quot).unwrap(), None, "{}", fx.name);
            let m = &quot.matrices;
            for i in 0..=d {
                for j in 0..=d {
                    let mut rhs = IntMatrix::zeros(part.cell_count(), part.cell_count());
                    for (k, mk) in m.iter().enumerate() {
                        rhs = rhs.add(&mk.scale(s.p(i, j, k)).unwrap()).unwrap();
                    }
                    assert_eq!(m[i].mul(&m[j]).unwrap(), rhs);
                }
            }
            pairs += 1;
        }
    }
    Outcome::Pass(format!("arrays reproduced; identities exact on {pairs} (scheme, partition) fixtures"))
}

// 6 ----------------------------------------------------------------------

fn criterion6() -> Outcome {
    let mut built = 0;
    let mut pairs_checked = 0u64;
    for fx in fixtures() {
        for part in &fx.partitions {
            let Some(_) = part.equal_cell_size() else { continue };
            for p in [2u64, 3, 5] {
                let numbers = fx.scheme.intersection_numbers();
                for set in divisibility_screen(numbers, p).unwrap() {
                    let input = PipelineInput::Scheme {
                        matrices: fx.scheme.adjacency().to_vec(),
                        partition: PartitionSpec::Explicit(part.clone()),
                        indices: Some(set.clone()),
                    };
                    let rep = match theorem_pipeline(TheoremKind::Thm43, &input, &PipelineOptions::new(p, 1)) {
                        Ok(r) => r,
                        Err(lcd_core::Error::DimensionBlowup(_)) => continue,
                        Err(e) => panic!("{} p={p} I={set:?}: {e}", fx.name),
                    };
                    let t = part.cell_count();
                    assert!(rep.lcd_verified);
                    assert!(rep.code.is_lcd_subspace_code().unwrap().lcd, "{} p={p}", fx.name);
                    assert_eq!(rep.params.n, 2 * t);
                    assert_eq!(rep.params.dims, vec![t]);
                    // N_x N_y^T = I on every pair: basis products vanish (which covers all
                    // pairs by bilinearity) and, for small algebras, each pair directly
                    let f = FieldSpec::new(p, 1).unwrap();
                    let quot = quotient_matrices(part, fx.scheme.adjacency()).unwrap();
                    let gens: Vec<MatrixFq> = set.iter().map(|&i| quot.matrices[i].reduce_mod(&f)).collect();
                    let alg = algebra_closure(&gens).unwrap();
                    for x in alg.basis() {
                        for y in alg.basis() {
                            assert!(x.mul(&y.transpose()).unwrap().is_zero());
                        }
                    }
                    let a = alg.dim();
                    if (p as u128).pow(a as u32) <= 256 {
                        let elems: Vec<MatrixFq> = (1..(p as u128).pow(a as u32))
                            .map(|k| {
                                let c: Vec<u32> = (0..a).map(|i| ((k / (p as u128).pow(i as u32)) % p as u128) as u32).collect();
                                alg.element(&c)
                            })
                            .collect();
                        for x in &elems {
                            for y in &elems {
                                let nx = build_block(x, 1).unwrap();
                                let ny = build_block(y, 1).unwrap();
                                assert_eq!(nx.mul(&ny.transpose()).unwrap(), MatrixFq::identity(&f, t));
                                pairs_checked += 1;
                            }
                        }
                    }
                    built += 1;
                }
            }
        }
    }
    assert!(built >= 10, "only {built} screened fixtures");
    Outcome::Pass(format!("{built} screened constructions verified; {pairs_checked} N_x N_y^T pairs checked directly"))
}

// 7 ----------------------------------------------------------------------

fn criterion7() -> Outcome {
    let all = order4_hadamards();
    assert_eq!(all.len(), 768);
    let empty = UnbiasedSet::empty(MatrixKind::Hadamard, 4, 4);
    let SearchOutcome::Found(h1) = search_unbiased_extension(&empty, &SearchOptions::default()).unwrap() else {
        panic!("no order-4 Hadamard matrix")
    };
    let seed = UnbiasedSet::new(MatrixKind::Hadamard, vec![h1.clone()]).unwrap();
    let SearchOutcome::Found(h2) = search_unbiased_extension(&seed, &SearchOptions::default()).unwrap() else {
        panic!("no unbiased mate")
    };
    let pair = UnbiasedSet::new(MatrixKind::Hadamard, vec![h1.clone(), h2.clone()]).unwrap();
    let no_bound = SearchOptions { use_bound: false, ..SearchOptions::default() };
    let third = search_unbiased_extension(&pair, &no_bound).unwrap();
    assert_eq!(third, SearchOutcome::Nonexistent(Nonexistence::Enumeration));
    // independent oracle: no catalogue matrix is unbiased with both
    let hb = |a: &IntMatrix, b: &IntMatrix| are_unbiased(a, b, MatrixKind::Hadamard).unwrap().unbiased;
    assert!(!all.iter().any(|m| hb(&h1, m) && hb(&h2, m)));

    let input =
        PipelineInput::Matrices { kind: MatrixKind::Hadamard, matrices: vec![h1, h2], partition: PartitionSpec::Singletons };
    let rep = theorem_pipeline(TheoremKind::Thm51, &input, &PipelineOptions::new(2, 1)).unwrap();
    assert!(rep.lcd_verified && rep.code.is_lcd_subspace_code().unwrap().lcd);
    assert_eq!(rep.params.n, 8);
    assert_eq!(rep.params.dims, vec![4]);
    Outcome::Pass(format!(
        "pair found, third ruled out by completed enumeration; (8,{},-;4)_2 verified",
        rep.params.size
    ))
}

// 8 ----------------------------------------------------------------------

fn criterion8() -> Outcome {
    let bundled = bush_pair();
    // re-derive the bundled pair
    let bush = SearchOptions { bush: true, ..SearchOptions::default() };
    let empty = UnbiasedSet::empty(MatrixKind::Hadamard, 16, 16);
    let SearchOutcome::Found(h1) = search_unbiased_extension(&empty, &bush).unwrap() else { panic!() };
    let seed = UnbiasedSet::new(MatrixKind::Hadamard, vec![h1.clone()]).unwrap();
    let SearchOutcome::Found(h2) = search_unbiased_extension(&seed, &bush).unwrap() else { panic!() };
    assert_eq!(vec![h1, h2], bundled);

    let set = UnbiasedSet::new(MatrixKind::Hadamard, bundled.clone()).unwrap();
    let g = gramian_b(&set).unwrap();
    assert_eq!((g.n, g.m), (2, 2));
    let murh = murh_scheme(&g).unwrap();
    assert_eq!(murh.identities.len(), 5);
    let schemes = bush_schemes(&set).unwrap();
    let five = schemes.identities.iter().filter(|s| s.starts_with('A')).count();
    let eight = schemes.identities.len() - five;
    assert_eq!(five, 15);

    let input = PipelineInput::Matrices { kind: MatrixKind::Hadamard, matrices: bundled, partition: PartitionSpec::Singletons };
    let rep = theorem_pipeline(TheoremKind::Thm59, &input, &PipelineOptions::new(2, 1)).unwrap();
    assert!(rep.lcd_verified && rep.lcd_check.exhaustive);
    assert!(rep.code.is_lcd_subspace_code().unwrap().lcd);
    assert_eq!(rep.params.n, 192);
    let d = rep.params.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
    Outcome::Pass(format!(
        "5 MURH, {five} 5-class and {eight} 8-class identities exact; ({},{},{d};96)_2 verified",
        rep.params.n, rep.params.size
    ))
}

// 9 ----------------------------------------------------------------------

/// Files expected in `$LCD_EXTERNAL_DATA`:
/// `doubled_hs.txt` with `doubled_hs_h1.txt` and `doubled_hs_h2.txt` (graph and
/// generators), `doubled_m22.txt` with `doubled_m22_h.txt`, and `w16_9.txt`
/// holding the four weighing matrices in the order W1, W2, W3, K.
fn external_data() -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os("LCD_EXTERNAL_DATA")?);
    dir.is_dir().then_some(dir)
}

/// Accepts either reading of the codeword count.
fn check_params(rep: &lcd_core::ConstructionReport, n: usize, size: usize, d: usize, k: usize) -> String {
    let t = &rep.tallies;
    let sizes = [t.distinct_codewords as u128, t.with_zero_word, t.x_alpha_pairs];
    let got = format!(
        "({},{} [with zero {}],{:?};{:?})_{}",
        rep.params.n, t.distinct_codewords, t.with_zero_word, rep.params.d, rep.params.dims, rep.params.q
    );
    assert_eq!(rep.params.n, n, "{got}");
    assert_eq!(rep.params.dims, vec![k], "{got}");
    assert_eq!(rep.params.d, Some(d), "{got}");
    if !sizes.contains(&(size as u128)) {
        return format!("{got} size differs from {size}; ");
    }
    String::new()
}

fn criterion9() -> Outcome {
    let Some(dir) = external_data() else {
        return Outcome::Skip(
            "no external data (set LCD_EXTERNAL_DATA to a directory with the doubled graph, group and W(16,9) files)"
                .into(),
        );
    };
    let mut notes = String::new();
    let read = |name: &str| read_file(&dir.join(name)).unwrap();
    let drg = |graph: &str, group: &str| {
        let input = PipelineInput::Drg {
            graph: parse_graph(&read(graph)).unwrap(),
            group: parse_group(&read(group)).unwrap(),
            indices: Some(vec![1, 4]),
        };
        theorem_pipeline(TheoremKind::Cor45, &input, &PipelineOptions::new(2, 1)).unwrap()
    };
    notes += &check_params(&drg("doubled_hs.txt", "doubled_hs_h1.txt"), 20, 16, 2, 10);
    notes += &check_params(&drg("doubled_hs.txt", "doubled_hs_h2.txt"), 40, 5, 2, 20);
    notes += &check_params(&drg("doubled_m22.txt", "doubled_m22_h.txt"), 22, 4, 2, 11);
    let w: Vec<IntMatrix> = parse_matrices(&read("w16_9.txt")).unwrap().into_iter().map(|m| m.into_int().unwrap()).collect();
    let weighing = |ix: &[usize]| {
        let input = PipelineInput::Matrices {
            kind: MatrixKind::Weighing,
            matrices: ix.iter().map(|&i| w[i].clone()).collect(),
            partition: PartitionSpec::Singletons,
        };
        let opts = PipelineOptions { code: CodeOptions { alpha_sweep: true, ..CodeOptions::default() }, ..PipelineOptions::new(3, 1) };
        theorem_pipeline(TheoremKind::Thm52, &input, &opts).unwrap()
    };
    notes += &check_params(&weighing(&[0, 1, 2, 3]), 32, 81, 6, 16);
    notes += &check_params(&weighing(&[0, 1, 3]), 32, 27, 8, 16);
    notes += &check_params(&weighing(&[0, 1, 2]), 32, 27, 6, 16);
    assert!(notes.is_empty(), "{notes}");
    Outcome::Pass("all six parameter sets reproduced".into())
}

// 10 ---------------------------------------------------------------------

fn criterion10() -> Outcome {
    // 15 words of dimension 4 in F_16^8 from an order-4 unbiased pair
    let all = order4_hadamards();
    let mate = all.iter().find(|m| are_unbiased(&all[0], m, MatrixKind::Hadamard).unwrap().unbiased).unwrap();
    let input = PipelineInput::Matrices {
        kind: MatrixKind::Hadamard,
        matrices: vec![all[0].clone(), mate.clone()],
        partition: PartitionSpec::Singletons,
    };
    let code = theorem_pipeline(TheoremKind::Thm51, &input, &PipelineOptions::new(2, 4)).unwrap().code;
    assert_eq!(code.len(), 15);
    let noisy = ChannelSpec { erasures: 1, errors: 1, seed: 2024 };
    let a = run_experiment(&code, &noisy, 1000).unwrap();
    let b = run_experiment(&code, &noisy, 1000).unwrap();
    assert_eq!(a, b);
    let clean = run_experiment(&code, &ChannelSpec { erasures: 0, errors: 0, seed: 5 }, 1000).unwrap();
    assert_eq!(clean.correct, clean.trials);
    let big = run_experiment(&code, &ChannelSpec { erasures: 1, errors: 1, seed: 6 }, 10_000).unwrap();
    assert_eq!(big.agreement, 10_000);
    assert_eq!(big.correct + big.failure + big.wrong, 10_000);
    Outcome::Pass(format!(
        "deterministic; noiseless 1000/1000; 10^4 trials agree on a {}-word code (correct {}, failure {}, wrong {})",
        code.len(),
        big.correct,
        big.failure,
        big.wrong
    ))
}

#[test]
fn acceptance() {
    type Criterion = (u32, &'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 10] = [
        (1, "field and linear algebra", criterion1, Duration::from_secs(30)),
        (2, "determinant test vs hull", criterion2, Duration::MAX),
        (3, "projection distance identity", criterion3, Duration::from_secs(60)),
        (4, "decoder equivalence", criterion4, Duration::MAX),
        (5, "scheme suite", criterion5, Duration::from_secs(60)),
        (6, "construction validity", criterion6, Duration::MAX),
        (7, "order-4 Hadamard", criterion7, Duration::from_secs(120)),
        (8, "order-16 identities and 8-class code", criterion8, Duration::MAX),
        (9, "named parameter sets", criterion9, Duration::MAX),
        (10, "simulator", criterion10, Duration::from_secs(120)),
    ];
    let mut failed = Vec::new();
    for (n, name, f, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let line = match result {
            Ok(Outcome::Pass(detail)) if elapsed <= limit => format!("PASS {name}: {detail}"),
            Ok(Outcome::Pass(detail)) => {
                failed.push(n);
                format!("FAIL {name}: over the {limit:?} limit ({detail})")
            }
            Ok(Outcome::Skip(reason)) => format!("SKIP {name}: {reason}"),
            Err(e) => {
                failed.push(n);
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL {name}: {msg}")
            }
        };
        // bypasses the harness capture so the lines show up in plain `cargo test`
        let mut out = std::io::stdout().lock();
        writeln!(out, "criterion {n:>2} {line} [{:.2}s]", elapsed.as_secs_f64()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
