//! The reproduction battery: every worked example about `Γ_{3,5}`,
//! `Γ_{5,7}` and `Γ_{5,17}` as a named pass/fail check, plus randomized
//! invariant sweeps.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::arith::is_prime;
use crate::complex::{build_squares, check_link, normalize_square, Presentation};
use crate::cosets::{todd_coxeter, DEFAULT_MAX_COSETS};
use crate::error::Result;
use crate::gensets::enumerate_xq;
use crate::membership::{factor_element, factor_quaternion, is_admissible};
use crate::padic::{psi_matrix_mod_pk, solve_cd};
use crate::quat::{is_central, reduce_canonical, GroupElement, Quaternion};
use crate::rewrite::{
    centralizer_is_cyclic, classify_pair, evaluate_word, norm_form_search, normalize_ab,
    normalize_ba, power_commute_scan, verify_relation, words_equal, CentralizerCertificate,
    ExponentRange, ExponentWord, NormFormBounds, PairClass, RELATION_106, RELATION_SHORT,
};
use crate::sample::{random_nonzero_quaternion, random_reduced_word, random_word, rng};
use crate::so3::{is_special_orthogonal, relation_transfer_check, theta, RotationMatrix};
use crate::word::{Letter, Side};

/// Builds the presentation of `Γ_{p,l}`. Replaceable so that a broken
/// construction can be fed to the suite.
pub type Builder = fn(u64, u64) -> Result<Presentation>;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random samples per property sweep.
    pub samples: usize,
    /// Run only checks whose id or section equals this string.
    pub only: Option<String>,
    pub builder: Builder,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 1000,
            only: None,
            builder: build_squares,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub section: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub budget: Duration,
}

type Outcome = std::result::Result<String, String>;

struct Check {
    id: &'static str,
    section: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn(&SuiteConfig) -> Outcome,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CHECKS: &[Check] = &[
    Check {
        id: "jacobi",
        section: "gensets",
        title: "|X_q| = 2(q+1) for odd primes q < 100",
        budget: secs(1),
        run: check_jacobi,
    },
    Check {
        id: "shape",
        section: "complex",
        title: "generator and square counts, link condition",
        budget: secs(4),
        run: check_shape,
    },
    Check {
        id: "relators",
        section: "complex",
        title: "six relators of Γ_{3,5} are central and match the squares",
        budget: secs(1),
        run: check_relators,
    },
    Check {
        id: "indices",
        section: "cosets",
        title: "coset indices 32, 4 and 896",
        budget: secs(30),
        run: check_indices,
    },
    Check {
        id: "relations",
        section: "rewrite",
        title: "relations of length 106 and 14 hold in Γ and in SO_3(Q)",
        budget: secs(1),
        run: check_relations,
    },
    Check {
        id: "anti-torus",
        section: "rewrite",
        title: "anti-torus and Z×Z classifications",
        budget: secs(1),
        run: check_anti_torus,
    },
    Check {
        id: "centralizer",
        section: "rewrite",
        title: "cyclic centralizer of ψ(3+2i+2j) in Γ_{5,17}",
        budget: secs(1),
        run: check_centralizer,
    },
    Check {
        id: "norm-form",
        section: "rewrite",
        title: "no t² + 8u² = 5^r 17^s with t, u ≤ 10^4, r + s ≤ 12",
        budget: secs(60),
        run: check_norm_form,
    },
    Check {
        id: "theta",
        section: "so3",
        title: "explicit rotation matrices θ(1+2i), θ(1+j+k), θ(1+4k)",
        budget: secs(1),
        run: check_theta,
    },
    Check {
        id: "properties",
        section: "properties",
        title: "randomized invariant sweeps",
        budget: secs(60),
        run: check_properties,
    },
];

/// Ids and sections of all checks, in run order.
pub fn check_names() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.section)).collect()
}

/// Runs the selected checks in order. Failures are reported, never raised.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|c| match &cfg.only {
            Some(f) => f == c.id || f == c.section,
            None => true,
        })
        .map(|c| {
            let start = Instant::now();
            let outcome = (c.run)(cfg);
            let elapsed = start.elapsed();
            let (mut passed, mut detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            if passed && elapsed > c.budget {
                passed = false;
                detail = format!("{detail}; exceeded time budget of {:?}", c.budget);
            }
            CheckResult {
                id: c.id,
                section: c.section,
                title: c.title,
                passed,
                detail,
                elapsed,
                budget: c.budget,
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build(cfg: &SuiteConfig, p: u64, l: u64) -> std::result::Result<Presentation, String> {
    (cfg.builder)(p, l).map_err(|e| format!("Γ_{{{p},{l}}}: {e}"))
}

fn q(s: &str) -> Quaternion {
    s.parse().expect("literal quaternion")
}

fn g(s: &str) -> GroupElement {
    reduce_canonical(&q(s)).expect("nonzero literal")
}

fn check_jacobi(_: &SuiteConfig) -> Outcome {
    let mut n = 0;
    for p in (3..100u64).filter(|&p| is_prime(p)) {
        let xs = enumerate_xq(p).map_err(|e| e.to_string())?;
        ensure(xs.len() as u64 == 2 * (p + 1), || {
            format!("|X_{p}| = {}, expected {}", xs.len(), 2 * (p + 1))
        })?;
        n += 1;
    }
    Ok(format!("{n} primes checked"))
}

fn check_shape(cfg: &SuiteConfig) -> Outcome {
    for (p, l, m, n, sq) in [(3, 5, 2, 3, 6), (5, 17, 3, 9, 27)] {
        let pres = build(cfg, p, l)?;
        let got = (pres.h_rank(), pres.v_rank(), pres.squares().len());
        ensure(got == (m, n, sq), || {
            format!("Γ_{{{p},{l}}}: got {got:?}, expected {:?}", (m, n, sq))
        })?;
    }
    for (p, l) in [(3, 5), (5, 17), (5, 7), (13, 17)] {
        let start = Instant::now();
        let pres = build(cfg, p, l)?;
        check_link(&pres).map_err(|e| format!("Γ_{{{p},{l}}}: {e}"))?;
        let took = start.elapsed();
        ensure(took <= secs(1), || {
            format!("Γ_{{{p},{l}}} took {took:?}, over 1s")
        })?;
    }
    Ok(
        "2+3 gens / 6 squares and 3+9 gens / 27 squares; link complete bipartite for 4 groups"
            .into(),
    )
}

const RELATORS_3_5: [&str; 6] = [
    "a1 b1 a2 b2",
    "a1 b2 a2 b1^-1",
    "a1 b3 a2^-1 b1",
    "a1 b3^-1 a1 b2^-1",
    "a1 b1^-1 a2^-1 b3",
    "a2 b3 a2 b2^-1",
];

fn check_relators(cfg: &SuiteConfig) -> Outcome {
    let pres = build(cfg, 3, 5)?;
    let assignment = [
        (Letter::h(0), "1+j+k"),
        (Letter::h(1), "1+j-k"),
        (Letter::v(0), "1+2i"),
        (Letter::v(1), "1+2j"),
        (Letter::v(2), "1+2k"),
    ];
    for (letter, lit) in assignment {
        ensure(pres.lift(letter) == g(lit), || {
            format!("{letter} lifts to {}, expected {lit}", pres.lift(letter))
        })?;
    }
    let lift = |l: Letter| {
        let x = q(assignment
            .iter()
            .find(|(a, _)| *a == l.inv() || *a == l)
            .unwrap()
            .1);
        if l.inverse {
            x.conj()
        } else {
            x
        }
    };
    let squares: Vec<_> = pres.squares().iter().map(normalize_square).collect();
    for r in RELATORS_3_5 {
        let w = pres.parse_word(r).map_err(|e| e.to_string())?;
        let value = w
            .letters()
            .iter()
            .fold(Quaternion::one(), |acc, &l| &acc * &lift(l));
        ensure(is_central(&value), || format!("{r} evaluates to {value}"))?;
        let sq: [Letter; 4] = w
            .letters()
            .try_into()
            .map_err(|_| format!("{r} is not a square"))?;
        ensure(squares.contains(&normalize_square(&sq)), || {
            format!("{r} is not among the constructed squares")
        })?;
    }
    Ok("6 relators central and found among the 6 squares".into())
}

fn check_indices(cfg: &SuiteConfig) -> Outcome {
    let p517 = build(cfg, 5, 17)?;
    let gens = ["1+2i", "1+4k"]
        .iter()
        .map(|s| factor_quaternion(&q(s), &p517))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let p35 = build(cfg, 3, 5)?;
    let words = |ws: &[&str]| -> std::result::Result<Vec<_>, String> {
        ws.iter()
            .map(|w| p35.parse_word(w).map_err(|e| e.to_string()))
            .collect()
    };
    let cases = [
        ("Γ_{5,17} : ⟨1+2i, 1+4k⟩", &p517, gens, 32),
        ("Γ_{3,5} : ⟨a1, b1⟩", &p35, words(&["a1", "b1"])?, 4),
        ("Γ_{3,5} : ⟨a1², b1²⟩", &p35, words(&["a1^2", "b1^2"])?, 896),
    ];
    let mut found = Vec::new();
    for (name, pres, gens, expected) in cases {
        let t = todd_coxeter(pres, &gens, DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
        let idx = t.index();
        ensure(idx == Some(expected), || {
            format!("[{name}] = {idx:?} ({:?}), expected {expected}", t.status())
        })?;
        found.push(expected.to_string());
    }
    Ok(format!("indices {}", found.join(", ")))
}

fn check_relations(_: &SuiteConfig) -> Outcome {
    for (word, x, y, len) in [
        (RELATION_106, "1+2i", "1+4k", 106),
        (RELATION_SHORT, "1+j+k", "1+2i", 14),
    ] {
        let w: ExponentWord = word.parse().map_err(|e: crate::Error| e.to_string())?;
        ensure(w.len() == len, || {
            format!("word has length {}, expected {len}", w.len())
        })?;
        let out = verify_relation(&w, &q(x), &q(y)).map_err(|e| e.to_string())?;
        ensure(out.holds, || {
            format!("x={x}, y={y}: value {} is not central", out.value)
        })?;
        let so3 = relation_transfer_check(&w, &q(x), &q(y)).map_err(|e| e.to_string())?;
        ensure(so3, || {
            format!("x={x}, y={y}: rotation product is not the identity")
        })?;
    }
    Ok("both relations central; both transfer to the identity rotation".into())
}

fn check_anti_torus(_: &SuiteConfig) -> Outcome {
    let classify = |p, l, a: &GroupElement, b: &GroupElement| {
        classify_pair(p, l, a, b).map_err(|e| e.to_string())
    };
    let c = classify(5, 17, &g("1+2i"), &g("1+4k"))?;
    ensure(c == PairClass::AntiTorus, || format!("(1+2i, 1+4k) → {c}"))?;
    let scan = power_commute_scan(&g("1+2i"), &g("1+4k"), 5);
    ensure(scan.is_none(), || format!("commuting powers {scan:?}"))?;
    let c = classify(5, 17, &g("1+2i"), &g("1+4i"))?;
    ensure(c == PairClass::ZCrossZ, || format!("(1+2i, 1+4i) → {c}"))?;

    let b = g("1+2i+j+k");
    let a = g("1+2j").mul(&g("1+2k"));
    let c = classify(5, 7, &a, &b)?;
    ensure(c == PairClass::ZCrossZ, || {
        format!("(a2 a3, 1+2i+j+k) → {c}")
    })?;
    for lit in ["1+2i", "1+2j", "1+2k"] {
        for x in [g(lit), g(lit).inverse()] {
            let c = classify(5, 7, &x, &b)?;
            ensure(c == PairClass::AntiTorus, || {
                format!("({x}, 1+2i+j+k) → {c}")
            })?;
        }
    }
    Ok("Γ_{5,17}: ANTI_TORUS, no commuting powers ≤ 5, Z_CROSS_Z; Γ_{5,7}: Z_CROSS_Z and 6 ANTI_TORUS".into())
}

fn check_centralizer(cfg: &SuiteConfig) -> Outcome {
    let pres = build(cfg, 5, 17)?;
    let rep = centralizer_is_cyclic(&pres, &g("3+2i+2j")).map_err(|e| e.to_string())?;
    ensure(rep.rho_fixpoint_free == Some(true), || {
        format!("ρ_v(b) fixpoint-free: {:?}", rep.rho_fixpoint_free)
    })?;
    ensure(rep.n_b == "2", || format!("n(b) = {}", rep.n_b))?;
    ensure((rep.legendre_p, rep.legendre_l) == (-1, 1), || {
        format!("(−2/5) = {}, (−2/17) = {}", rep.legendre_p, rep.legendre_l)
    })?;
    ensure(
        rep.certificate == CentralizerCertificate::CyclicCertified,
        || format!("certificate {}", rep.certificate),
    )?;
    Ok("ρ_v(b) fixpoint-free; n(b) = 2, (−2/5) = −1, (−2/17) = 1".into())
}

fn check_norm_form(_: &SuiteConfig) -> Outcome {
    let bounds = NormFormBounds {
        t_max: 10_000,
        u_max: 10_000,
        exp_max: 12,
        exponents: ExponentRange::Positive,
    };
    let w = norm_form_search(2, 5, 17, bounds);
    ensure(w.is_empty(), || format!("witnesses found: {w:?}"))?;
    Ok("no witness within bounds (bounded evidence, not a proof)".into())
}

fn check_theta(cfg: &SuiteConfig) -> Outcome {
    let expected = [
        (
            "1+2i",
            RotationMatrix::from_ints(5, [[5, 0, 0], [0, -3, -4], [0, 4, -3]]),
        ),
        (
            "1+j+k",
            RotationMatrix::from_ints(3, [[-1, -2, 2], [2, 1, 2], [-2, 2, 1]]),
        ),
        (
            "1+4k",
            RotationMatrix::from_ints(17, [[-15, -8, 0], [8, -15, 0], [0, 0, 17]]),
        ),
    ];
    for (lit, m) in &expected {
        let t = theta(&q(lit)).map_err(|e| e.to_string())?;
        ensure(&t == m, || format!("θ({lit}) =\n{t}"))?;
        ensure(is_special_orthogonal(&t), || {
            format!("θ({lit}) not in SO_3")
        })?;
    }
    let mut n = expected.len();
    for (p, l) in [(3, 5), (5, 17)] {
        let pres = build(cfg, p, l)?;
        for letter in pres.letters() {
            let t = theta(&pres.lift(letter).lift()).map_err(|e| e.to_string())?;
            ensure(is_special_orthogonal(&t), || {
                format!("θ({letter}) not in SO_3")
            })?;
            n += 1;
        }
    }
    Ok(format!(
        "3 matrices match exactly; {n} θ outputs special orthogonal"
    ))
}

fn check_properties(cfg: &SuiteConfig) -> Outcome {
    let mut rng = rng(cfg.seed);
    let n = cfg.samples;
    let p35 = build(cfg, 3, 5)?;
    let p57 = build(cfg, 5, 7)?;
    let err = |e: crate::Error| e.to_string();

    // normal forms against the evaluation oracle
    for i in 0..n {
        let pres = if i % 2 == 0 { &p35 } else { &p57 };
        let len = rng.gen_range(0..=24);
        let w = random_word(pres, len, &mut rng);
        let ev = evaluate_word(pres, &w).map_err(err)?;
        let ab = normalize_ab(pres, &w).map_err(err)?;
        let ba = normalize_ba(pres, &w).map_err(err)?;
        let ab_word = ab.to_word(pres);
        ensure(evaluate_word(pres, &ab_word).map_err(err)? == ev, || {
            format!("ab-form of {w} changes the element")
        })?;
        ensure(
            evaluate_word(pres, &ba.to_word(pres)).map_err(err)? == ev,
            || format!("ba-form of {w} changes the element"),
        )?;
        ensure(normalize_ab(pres, &ab_word).map_err(err)? == ab, || {
            format!("ab-form of {w} is not stable")
        })?;
        ensure(
            ab.sigma_a.len() == ba.sigma_a.len() && ab.sigma_b.len() == ba.sigma_b.len(),
            || format!("part lengths differ between the ab- and ba-forms of {w}"),
        )?;
        ensure(ab.len() <= w.len(), || {
            format!("normal form of {w} is longer")
        })?;

        // an equal word: insert a relator and a cancelling pair
        let mut letters = w.letters().to_vec();
        let sq = &pres.squares()[rng.gen_range(0..pres.squares().len())];
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, sq.iter().copied());
        let at = rng.gen_range(0..=letters.len());
        let x = pres.letters()[rng.gen_range(0..pres.letters().len())];
        letters.splice(at..at, [x, x.inv()]);
        let u = pres.word(letters);
        let other = random_word(pres, len, &mut rng);
        for v in [u, other] {
            let equal = words_equal(pres, &w, &v).map_err(err)?;
            let same_nf = normalize_ab(pres, &v).map_err(err)? == ab;
            ensure(equal == same_nf, || {
                format!("{w} vs {v}: equality {equal}, normal forms {same_nf}")
            })?;
        }
    }

    // free factors
    for i in 0..n {
        let pres = if i % 2 == 0 { &p35 } else { &p57 };
        let side = if i % 4 < 2 { Side::H } else { Side::V };
        let len = rng.gen_range(1..=12);
        let w = random_reduced_word(pres, Some(side), len, &mut rng);
        ensure(!evaluate_word(pres, &w).map_err(err)?.is_identity(), || {
            format!("reduced word {w} is trivial")
        })?;
    }

    // θ
    for _ in 0..n {
        let x = random_nonzero_quaternion(30, &mut rng);
        let y = random_nonzero_quaternion(30, &mut rng);
        let tx = theta(&x).map_err(err)?;
        let ty = theta(&y).map_err(err)?;
        ensure(theta(&(&x * &y)).map_err(err)? == tx.mul(&ty), || {
            format!("θ({x}·{y}) ≠ θ({x})θ({y})")
        })?;
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let lambda = BigRational::new(
            (sign * rng.gen_range(1..=40i64)).into(),
            rng.gen_range(1..=40i64).into(),
        );
        ensure(theta(&x.scale(&lambda)).map_err(err)? == tx, || {
            format!("θ not scale invariant at {x}")
        })?;
        ensure(tx.is_identity() == is_central(&x), || {
            format!("kernel mismatch at {x}")
        })?;
        ensure(is_special_orthogonal(&tx), || format!("θ({x}) not in SO_3"))?;
        let c = Quaternion::scalar(lambda);
        ensure(theta(&c).map_err(err)?.is_identity(), || {
            "central element acts".into()
        })?;
    }

    // factorization round trip
    for i in 0..n {
        let pres = if i % 2 == 0 { &p35 } else { &p57 };
        let len = rng.gen_range(0..=10);
        let w = random_word(pres, len, &mut rng);
        let e = evaluate_word(pres, &w).map_err(err)?;
        let f = factor_element(&e, pres).map_err(err)?;
        ensure(evaluate_word(pres, &f).map_err(err)? == e, || {
            format!("factorization of {e} evaluates elsewhere")
        })?;
        let adm =
            is_admissible(&e.lift(), pres.p(), pres.l()).ok_or("canonical lift not admissible")?;
        let (r, s) = adm.exponents();
        ensure(f.len() as u32 == r + s, || {
            format!("factorization of {e} has length {}", f.len())
        })?;
        ensure(
            f.len() == normalize_ab(pres, &w).map_err(err)?.len(),
            || format!("factorization of {e} is not reduced"),
        )?;
    }

    // p-adic matrices
    let mut pk = 0;
    for p in [3, 5, 7, 13, 17] {
        for k in 1..=6 {
            let s = solve_cd(p, k).map_err(err)?;
            ensure(s.residual().is_zero(), || {
                format!("residual nonzero for p={p}, k={k}")
            })?;
            for _ in 0..n.div_ceil(30) {
                let x = random_nonzero_quaternion(100, &mut rng);
                let y = random_nonzero_quaternion(100, &mut rng);
                let mx = psi_matrix_mod_pk(&x, &s).map_err(err)?;
                let my = psi_matrix_mod_pk(&y, &s).map_err(err)?;
                let norm: BigInt = x.norm_sq().to_integer();
                ensure(mx.det() == norm.mod_floor(&s.modulus), || {
                    format!("det M({x}) ≢ |x|² mod {p}^{k}")
                })?;
                ensure(
                    psi_matrix_mod_pk(&(&x * &y), &s).map_err(err)? == mx.mul(&my),
                    || format!("M({x}·{y}) ≢ M({x})M({y}) mod {p}^{k}"),
                )?;
                pk += 1;
            }
        }
    }
    Ok(format!(
        "{n} words for normal forms, free factors, θ and factorization; {pk} p-adic pairs"
    ))
}
