//! Acceptance gate: one test per criterion, each printing a PASS line.

mod common;

use std::time::Instant;

use common::{claw, cycle, order_of, example7, Rng};
use robinson::instances::{
    random_robinsonian, random_unit_interval, worst_case, worst_case_sweep_form, GeneratorSpec,
};
use robinson::matrix::{from_dissimilarity, DissimilarityMatrixOf};
use robinson::oracle::{
    brute_force_robinsonian, is_valid_vertex, robinson_endpoints, similarity_layers,
    verify_robinson_cubic,
};
use robinson::recognize::{
    recognize, recognize_binary_3sweep, recognize_dissimilarity, verify_robinson,
    verify_robinson_dissimilarity, RecognizeOptions, Status,
};
use robinson::sfs::{is_sfs_ordering, sfs, sfs_plus, LinearOrder};
use robinson::Matrix;

fn random_order(n: usize, rng: &mut Rng) -> LinearOrder {
    let mut seq: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        seq.swap(i, rng.below(i as u64 + 1) as usize);
    }
    LinearOrder::from_seq(seq).unwrap()
}

/// Criterion 1: the adversarial family needs exactly n−1 sweeps from its
/// prescribed initial ordering, and every intermediate sweep matches the
/// closed form.
#[test]
fn acceptance_1_worst_case_family_exactness() {
    let started = Instant::now();
    for n in 4..=40 {
        let (a, sigma0) = worst_case(n).unwrap();
        assert_eq!(sigma0.seq(), worst_case_sweep_form(n, 0).seq(), "sigma0 n={n}");
        let mut cur = sigma0;
        for j in 1..=n - 2 {
            cur = sfs_plus(&a, &cur);
            assert_eq!(cur.seq(), worst_case_sweep_form(n, j).seq(), "closed form n={n} j={j}");
            let robinson = verify_robinson(&a, &cur).is_ok();
            assert_eq!(robinson, j == n - 2, "n={n}: sigma_{j} Robinson only at j=n-2");
        }
        // and the driver reports the full count with early exits off
        let (a, sigma0) = worst_case(n).unwrap();
        let report =
            recognize(&a, &RecognizeOptions { sigma0: Some(sigma0), no_early_exit: true });
        assert_eq!(report.status, Status::Robinsonian);
        assert_eq!(report.sweeps_used, n - 1);
    }
    assert!(started.elapsed().as_secs_f64() < 5.0, "criterion 1 budget");
    println!("ACCEPTANCE 1 worst-case family exactness (n=4..40): PASS");
}

/// Criterion 2: the generated n=11 worst-case matrix equals the printed
/// one entry for entry.
#[test]
fn acceptance_2_golden_11x11() {
    let rows: [&[i64]; 10] = [
        &[1, 1, 1, 1, 1, 1, 1, 1, 1, 0],
        &[2, 2, 2, 2, 2, 2, 2, 1, 1],
        &[3, 3, 3, 3, 3, 2, 2, 2],
        &[4, 4, 4, 3, 3, 3, 2],
        &[5, 4, 4, 4, 3, 2],
        &[5, 5, 4, 3, 2],
        &[5, 4, 3, 2],
        &[4, 3, 2],
        &[3, 2],
        &[2],
    ];
    let (a, _) = worst_case(11).unwrap();
    assert_eq!(a.n(), 11);
    for (i, row) in rows.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            let j = i + 1 + off;
            assert_eq!(a.weight(i as u32, j as u32), v, "entry ({}, {})", i + 1, j + 1);
        }
    }
    println!("ACCEPTANCE 2 golden 11x11 worst-case matrix: PASS");
}

fn small_instance_mix(count: usize, seed: u64) -> Vec<Matrix> {
    let mut rng = Rng(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = 4 + (rng.below(4) as usize); // 4..=7
        let m = match i % 3 {
            0 => random_robinsonian(n, 1 + rng.below(4) as usize, rng.next(), true).unwrap().0,
            1 => random_unit_interval(n, 0.3 + 0.1 * (i % 7) as f64, rng.next()).unwrap(),
            _ => {
                let base =
                    random_robinsonian(n, 1 + rng.below(4) as usize, rng.next(), true).unwrap().0;
                robinson::instances::perturb(&base, 1 + rng.below(3) as usize, rng.next()).unwrap()
            }
        };
        out.push(m);
    }
    out
}

/// Criterion 3: recognition agrees with exhaustive search on ≥ 300 small
/// generated matrices.
#[test]
fn acceptance_3_oracle_equivalence() {
    let started = Instant::now();
    let mut checked = 0;
    for a in small_instance_mix(320, 0xC3) {
        let fast = recognize(&a, &RecognizeOptions::default()).status == Status::Robinsonian;
        let slow = brute_force_robinsonian(&a).unwrap().is_some();
        assert_eq!(fast, slow, "disagreement on a generated {}-vertex matrix", a.n());
        checked += 1;
    }
    assert!(checked >= 300);
    assert!(started.elapsed().as_secs_f64() < 60.0, "criterion 3 budget");
    println!("ACCEPTANCE 3 oracle equivalence on {checked} matrices (n<=7): PASS");
}

/// Criterion 4: three sweeps decide unit interval graphs; C₄, C₅ and
/// the claw are rejected.
#[test]
fn acceptance_4_binary_3sweep() {
    let started = Instant::now();
    let mut rng = Rng(0xB1);
    for i in 0..200 {
        let n = 2 + (rng.below(199) as usize);
        let density = 0.2 + 0.15 * (i % 5) as f64;
        let g = random_unit_interval(n, density, rng.next()).unwrap();
        assert_eq!(g.connected_components().len(), 1, "generator must stay connected");
        let report = recognize_binary_3sweep(&g).unwrap();
        assert_eq!(report.status, Status::Robinsonian, "unit interval graph n={n}");
        assert_eq!(verify_robinson(&g, &order_of(report.order.as_ref().unwrap())), Ok(()));
    }
    for (name, g) in [("C4", cycle(4)), ("C5", cycle(5)), ("K13", claw())] {
        let report = recognize_binary_3sweep(&g).unwrap();
        assert_eq!(report.status, Status::NotRobinsonian, "{name}");
        assert!(brute_force_robinsonian(&g).unwrap().is_none(), "{name} brute force");
    }
    assert!(started.elapsed().as_secs_f64() < 30.0, "criterion 4 budget");
    println!("ACCEPTANCE 4 binary 3-sweep theorem (200 graphs, n<=200): PASS");
}

/// Criterion 5: the per-theorem invariant suite on Robinsonian
/// instances.
#[test]
fn acceptance_5_invariant_suite() {
    let started = Instant::now();
    let mut rng = Rng(0x55);
    let mut layer_flips = 0;
    for _ in 0..110 {
        let n = 4 + (rng.below(27) as usize); // 4..=30
        let (a, _) = random_robinsonian(n, 1 + n / 3, rng.next(), true).unwrap();

        // (a) every produced sweep is an SFS ordering
        let s0 = sfs(&a, &random_order(n, &mut rng));
        let s1 = sfs_plus(&a, &s0);
        let s2 = sfs_plus(&a, &s1);
        for s in [&s0, &s1, &s2] {
            assert_eq!(is_sfs_ordering(&a, s), Ok(()), "(a) n={n}");
        }

        // restrict the remaining checks to connected instances: the
        // anchor/layer statements are per-component
        if a.connected_components().len() != 1 {
            continue;
        }

        // (b) ends flip between consecutive good sweeps: s1 is good, so
        // s2 starts at s1's last vertex and ends at s1's first
        assert_eq!(s2.at(0), s1.at(n - 1), "(b) start n={n}");
        assert_eq!(s2.at(n - 1), s1.at(0), "(b) end n={n}");

        // (c) a Robinson SFS ordering plus-sweeps to its own reversal
        let report = recognize(&a, &RecognizeOptions::default());
        assert_eq!(report.status, Status::Robinsonian);
        let pi = order_of(report.order.as_ref().unwrap());
        assert_eq!(sfs_plus(&a, &pi).seq(), pi.reversed().seq(), "(c) n={n}");

        // (d) layers rooted at the anchor s1 starts from
        let root = s1.at(0);
        let layers = similarity_layers(&a, root);
        assert!(layers.leftover.is_empty(), "(d) partition n={n}");
        let mut layer_of = vec![usize::MAX; n];
        for (i, l) in layers.layers.iter().enumerate() {
            for &v in l {
                layer_of[v as usize] = i;
            }
        }
        // inequality chain: u in L_i, x,y in L_j, z past L_j, i < j
        for u in 0..n as u32 {
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    let (li, lj) = (layer_of[u as usize], layer_of[x as usize]);
                    if li >= lj || lj != layer_of[y as usize] || x >= y {
                        continue;
                    }
                    assert_eq!(a.weight(u, x), a.weight(u, y), "(d) equality n={n}");
                    assert!(a.weight(x, y) >= a.weight(u, x), "(d) upper n={n}");
                    for z in 0..n as u32 {
                        if layer_of[z as usize] > lj {
                            assert!(a.weight(u, x) >= a.weight(u, z), "(d) lower n={n}");
                        }
                    }
                }
            }
        }
        // compatibility with the good sweep, flipped by the next one
        for w in 0..n {
            for v in 0..w {
                let (lv, lw) = (layer_of[s1.at(v) as usize], layer_of[s1.at(w) as usize]);
                assert!(lv <= lw, "(d) compatibility n={n}");
            }
        }
        for w in 0..n {
            for v in 0..w {
                let (lv, lw) = (layer_of[s2.at(v) as usize], layer_of[s2.at(w) as usize]);
                assert!(lv >= lw, "(d) flipping n={n}");
            }
        }
        if layers.layers.len() > 2 {
            layer_flips += 1;
        }

        // (e) triples reversed between consecutive sweeps are Robinson
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                for z in 0..n as u32 {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    let fwd = s1.pos(x) < s1.pos(y) && s1.pos(y) < s1.pos(z);
                    let rev = s2.pos(z) < s2.pos(y) && s2.pos(y) < s2.pos(x);
                    if fwd && rev {
                        assert!(
                            a.weight(x, z) <= a.weight(x, y).min(a.weight(y, z)),
                            "(e) n={n}"
                        );
                    }
                }
            }
        }
    }
    assert!(layer_flips >= 20, "layer checks must not be vacuous");

    // (f) valid vertices = brute-force anchors at n <= 7
    let mut rng = Rng(0x5F);
    let mut checked = 0;
    while checked < 100 {
        let n = 4 + (rng.below(4) as usize);
        let (a, _) = random_robinsonian(n, 1 + rng.below(4) as usize, rng.next(), true).unwrap();
        let Some(ends) = robinson_endpoints(&a).unwrap() else { continue };
        for v in 0..n as u32 {
            assert_eq!(is_valid_vertex(&a, v), ends[v as usize], "(f) n={n} v={v}");
        }
        checked += 1;
    }
    assert!(started.elapsed().as_secs_f64() < 120.0, "criterion 5 budget");
    println!("ACCEPTANCE 5 invariant suite (a)-(f): PASS");
}

/// Criterion 6: the linear verifier agrees with the cubic scan on 500
/// random (matrix, permutation) pairs.
#[test]
fn acceptance_6_fast_verifier_equivalence() {
    let started = Instant::now();
    let mut rng = Rng(0x66);
    let mut robinson_seen = 0;
    for i in 0..500 {
        let n = 2 + (rng.below(39) as usize);
        // half arbitrary random matrices, half Robinsonian ones checked
        // under both their planted order and a shuffled one
        let (a, pi) = if i % 2 == 0 {
            let mut r = Rng(rng.next());
            let a = Matrix::from_dense_fn(n, |_, _| (r.below(5)) as i64);
            (a, random_order(n, &mut rng))
        } else {
            let (a, hidden) = random_robinsonian(n, 1 + n / 4, rng.next(), true).unwrap();
            let pi = if i % 4 == 1 { hidden } else { random_order(n, &mut rng) };
            (a, pi)
        };
        let fast = verify_robinson(&a, &pi);
        let cubic = verify_robinson_cubic(&a, &pi);
        assert_eq!(fast.is_ok(), cubic.is_none(), "n={n} case {i}");
        if let (Err(w), Some(c)) = (fast, cubic) {
            assert_eq!(w, c, "witness must be the position-lex-first triple");
        } else {
            robinson_seen += 1;
        }
    }
    assert!(robinson_seen >= 100, "both outcomes must be exercised");
    assert!(started.elapsed().as_secs_f64() < 30.0, "criterion 6 budget");
    println!("ACCEPTANCE 6 fast verifier == cubic scan on 500 pairs: PASS");
}

/// Criterion 7: per-sweep time grows roughly linearly in the instance
/// size, and a 10⁴-vertex recognition is fast in absolute terms.
#[test]
fn acceptance_7_performance_shape() {
    let mean_sweep_ms = |n: usize| -> f64 {
        // interval count tuned for m ≈ 8n; best of three runs
        let (a, _) = random_robinsonian(n, n / 6, 0x77, true).unwrap();
        let m = a.m();
        assert!(m >= 4 * n && m <= 14 * n, "m={m} not within the intended band for n={n}");
        (0..3)
            .map(|_| {
                let report = recognize(&a, &RecognizeOptions::default());
                assert_eq!(report.status, Status::Robinsonian);
                let t = &report.timings.sweep_ms;
                t.iter().sum::<f64>() / t.len() as f64
            })
            .fold(f64::INFINITY, f64::min)
    };
    let small = mean_sweep_ms(10_000);
    let large = mean_sweep_ms(80_000);
    let ratio = large / small;
    assert!(
        ratio <= 12.0,
        "per-sweep time grew by {ratio:.1}x from n=1e4 to n=8e4 (budget 12x)"
    );

    let (a, _) = random_robinsonian(10_000, 2_800, 0x78, true).unwrap();
    assert!(
        a.m() >= 80_000 && a.m() <= 130_000,
        "m={} not near 1e5",
        a.m()
    );
    let t = Instant::now();
    let report = recognize(&a, &RecognizeOptions::default());
    let secs = t.elapsed().as_secs_f64();
    assert_eq!(report.status, Status::Robinsonian);
    assert!(secs < 10.0, "recognition took {secs:.2} s (budget 10 s)");
    println!(
        "ACCEPTANCE 7 performance shape (sweep ratio {ratio:.2}x <= 12x, n=1e4 in {secs:.2}s): PASS"
    );
}

/// Criterion 8: DiSFS recognition of a dissimilarity equals recognition
/// of its similarity complement, and accepted orders verify the
/// dissimilarity Robinson condition.
#[test]
fn acceptance_8_disfs_consistency() {
    let started = Instant::now();
    let mut rng = Rng(0x88);
    let mut robinsonian_seen = 0;
    for i in 0..100 {
        let n = 3 + (rng.below(48) as usize); // 3..=50
        let d = if i % 2 == 0 {
            let mut r = Rng(rng.next());
            DissimilarityMatrixOf::new(Matrix::from_dense_fn(n, |_, _| r.below(6) as i64))
        } else {
            // Robinsonian dissimilarity: complement of a planted
            // Robinsonian similarity
            let (a, _) = random_robinsonian(n, 1 + n / 3, rng.next(), true).unwrap();
            let amax = a.distinct_positive_values().last().copied().unwrap_or(1);
            DissimilarityMatrixOf::new(Matrix::from_dense_fn(n, |x, y| {
                amax - a.weight(x as u32, y as u32)
            }))
        };
        let via_d = recognize_dissimilarity(&d, &RecognizeOptions::default());
        let via_a = recognize(&from_dissimilarity(&d), &RecognizeOptions::default());
        assert_eq!(via_d.status, via_a.status, "n={n} case {i}");
        if via_d.status == Status::Robinsonian {
            robinsonian_seen += 1;
            let pi = order_of(via_d.order.as_ref().unwrap());
            assert_eq!(verify_robinson_dissimilarity(&d, &pi), Ok(()), "n={n}");
        }
    }
    assert!(robinsonian_seen >= 40, "both outcomes must be exercised");

    // spot-check determinism of the generator specs used above
    let spec = GeneratorSpec::RandomRobinsonian { n: 30, k: 11, seed: 9, permute: true };
    assert_eq!(
        spec.build().unwrap().matrix.to_matrix_market(),
        spec.build().unwrap().matrix.to_matrix_market()
    );
    assert!(started.elapsed().as_secs_f64() < 30.0, "criterion 8 budget");
    println!("ACCEPTANCE 8 DiSFS consistency on 100 dissimilarities (n<=50): PASS");
}

/// Sanity pin for the suite itself: the worked 7×7 example recognizes
/// and verifies end to end.
#[test]
fn acceptance_smoke_worked_example() {
    let a = example7();
    let report = recognize(&a, &RecognizeOptions::default());
    assert_eq!(report.status, Status::Robinsonian);
    assert_eq!(verify_robinson(&a, &order_of(report.order.as_ref().unwrap())), Ok(()));
}
