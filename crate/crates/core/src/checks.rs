//! Oracle suites over deterministic random corpora.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::exactnum::{gcd, is_nonneg_integer, rat, Rat, Value};
use crate::invariants::{
    delta_additivity_check, delta_w, lattice_count, monomial_colength, noether_intersection,
    one_step_dim, quasihomogeneous_delta, r_w,
};
use crate::poly::{resultant, weighted_order, SparsePoly};
use crate::quotsing::QuotType;
use crate::resolve::{resolve_with, semi_invariance_check, Mode, ResolveOptions};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub total: usize,
    pub passed: usize,
    /// Inputs that were generated but could not be processed (for example
    /// because the extension bound was hit); they count neither way.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            total: 0,
            passed: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, pass: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if pass {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }
}

pub const SUITES: [&str; 6] = [
    "deltaw",
    "noether",
    "lattice",
    "quasihom",
    "additivity",
    "modes",
];

pub fn run_suite(name: &str) -> Option<SuiteReport> {
    Some(match name {
        "deltaw" => deltaw_suite(120),
        "noether" => noether_suite(120),
        "lattice" => lattice_suite(),
        "quasihom" => quasihom_suite(),
        "additivity" => additivity_suite(60),
        "modes" => mode_suite(120),
        _ => return None,
    })
}

/// Normalized types with `d ≤ max_d`, one representative per `(d,a,b)` triple.
pub fn normalized_types(max_d: i64) -> Vec<QuotType> {
    let mut out = vec![QuotType::smooth()];
    for d in 2..=max_d {
        for a in 1..d {
            for b in 1..d {
                if gcd(a, d) == 1 && gcd(b, d) == 1 {
                    out.push(QuotType::new(d, a, b).unwrap());
                }
            }
        }
    }
    out
}

fn int(c: i64) -> Value {
    Value::Q(Rat::from_integer(c.into()))
}

/// A reduced germ through the origin, semi-invariant on `t`, of degree ≤ `deg`.
pub fn random_germ(rng: &mut ChaCha8Rng, t: &QuotType, deg: u32) -> SparsePoly {
    loop {
        let residue = rng.gen_range(0..t.d());
        let mons: Vec<(u32, u32)> = (0..=deg)
            .flat_map(|i| (0..=deg - i).map(move |j| (i, j)))
            .filter(|&(i, j)| (i, j) != (0, 0) && t.residue(i, j) == residue)
            .collect();
        if mons.len() < 2 {
            continue;
        }
        let k = rng.gen_range(2..=mons.len().min(4));
        let mut f = SparsePoly::zero(&crate::exactnum::ExtField::rational(), &["x", "y"]);
        for &(i, j) in mons.choose_multiple(rng, k) {
            let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            f.add_term(vec![i, j], int(c));
        }
        if f.len() >= 2 && f.is_squarefree().unwrap_or(false) {
            return f;
        }
    }
}

/// Germs on random normalized types with `d ≤ max_d`, paired with their type.
pub fn germ_corpus(seed: u64, count: usize, max_d: i64, deg: u32) -> Vec<(SparsePoly, QuotType)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let types = normalized_types(max_d);
    (0..count)
        .map(|_| {
            let t = *types.choose(&mut rng).unwrap();
            (random_germ(&mut rng, &t, deg), t)
        })
        .collect()
}

fn skippable(e: &Error) -> bool {
    matches!(e, Error::ExtensionOverflow { .. })
}

/// δ^ω = δ/d + (r^ω − r/d)/2 on a corpus of quotient germs.
pub fn deltaw_suite(count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("deltaw");
    for (f, t) in germ_corpus(0x5eed_0001, count, 6, 8) {
        let res = (|| -> Result<(Rat, Rat), Error> {
            let tree = resolve_with(&f, t, &ResolveOptions::with_mode(Mode::Strong))?;
            let up = resolve_with(
                &f,
                QuotType::smooth(),
                &ResolveOptions::with_mode(Mode::Strong),
            )?;
            let dw = delta_w(&tree).total;
            let d = Rat::from_integer(t.d().into());
            let expected = delta_w(&up).total / &d
                + (r_w(&tree) - r_w(&up) / &d) / Rat::from_integer(2.into());
            Ok((dw, expected))
        })();
        match res {
            Ok((a, b)) => rep.record(a == b, || {
                format!("{f} on {t}: δ^ω = {a}, identity gives {b}")
            }),
            Err(e) if skippable(&e) => rep.skipped += 1,
            Err(e) => rep.record(false, || format!("{f} on {t}: {e}")),
        }
    }
    rep
}

/// Strong-mode δ^ω against the plain-mode blow-up sum plus leaf corrections.
pub fn mode_suite(count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("modes");
    for (f, t) in germ_corpus(0x5eed_0001, count, 6, 8) {
        let res = (|| -> Result<(Rat, Rat, bool), Error> {
            let strong = delta_w(&resolve_with(
                &f,
                t,
                &ResolveOptions::with_mode(Mode::Strong),
            )?);
            let plain = delta_w(&resolve_with(
                &f,
                t,
                &ResolveOptions::with_mode(Mode::Plain),
            )?);
            let nonneg = strong
                .per_node
                .iter()
                .chain(plain.per_node.iter())
                .all(|(_, c)| *c >= Rat::zero());
            Ok((strong.total, plain.node_sum + plain.leaf_correction, nonneg))
        })();
        match res {
            Ok((a, b, nonneg)) => rep.record(a == b && nonneg, || {
                format!("{f} on {t}: strong {a}, plain + corrections {b}, contributions non-negative: {nonneg}")
            }),
            Err(e) if skippable(&e) => rep.skipped += 1,
            Err(e) => rep.record(false, || format!("{f} on {t}: {e}")),
        }
    }
    rep
}

/// Order at `x = 0` of `res_y(C, D)`.
pub fn resultant_order(c: &SparsePoly, d: &SparsePoly) -> Option<u64> {
    let r = resultant(c, d, 1).ok()?;
    if r.is_zero() {
        return None;
    }
    Some(r.min_exponent(0) as u64)
}

fn random_plane_poly(rng: &mut ChaCha8Rng, deg: u32) -> SparsePoly {
    let mut f = SparsePoly::zero(&crate::exactnum::ExtField::rational(), &["x", "y"]);
    let ydeg = rng.gen_range(1..=deg);
    f.add_term(vec![0, ydeg], int(1));
    let k = rng.gen_range(1..=4);
    for _ in 0..k {
        let j = rng.gen_range(0..ydeg);
        let i = rng.gen_range(if j == 0 { 1 } else { 0 }..=deg - j);
        f.add_term(vec![i, j], int([-2, -1, 1, 2][rng.gen_range(0..4)]));
    }
    f
}

/// Coprime pairs, monic in `y`, whose only common point on `x = 0` is the origin.
pub fn noether_pairs(seed: u64, count: usize) -> Vec<(SparsePoly, SparsePoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let c = random_plane_poly(&mut rng, 5);
        let d = random_plane_poly(&mut rng, 5);
        if has_constant(&c) || has_constant(&d) {
            continue;
        }
        if !c.is_squarefree().unwrap_or(false)
            || !d.is_squarefree().unwrap_or(false)
            || !c.mul(&d).is_squarefree().unwrap_or(false)
        {
            continue;
        }
        let g = crate::poly::q_gcd(&axis_restriction(&c), &axis_restriction(&d));
        if g.iter().rev().skip(1).any(|x| !x.is_zero()) {
            continue;
        }
        if resultant_order(&c, &d).is_none() {
            continue;
        }
        out.push((c, d));
    }
    out
}

fn has_constant(f: &SparsePoly) -> bool {
    f.terms().any(|(e, _)| e.iter().all(|&k| k == 0))
}

fn axis_restriction(f: &SparsePoly) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); f.degree_in(1) as usize + 1];
    for (e, c) in f.rational_terms().unwrap() {
        if e[0] == 0 {
            out[e[1] as usize] = c;
        }
    }
    out
}

/// Intersection numbers by the resolution sum against the resultant order.
pub fn noether_suite(count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("noether");
    for (c, d) in noether_pairs(0x5eed_0002, count) {
        let oracle = resultant_order(&c, &d).unwrap();
        match noether_intersection(&c, &d, QuotType::smooth()) {
            Ok(v) => rep.record(v == rat(oracle as i64, 1), || {
                format!("C = {c}, D = {d}: sum {v}, resultant order {oracle}")
            }),
            Err(e) if skippable(&e) => rep.skipped += 1,
            Err(e) => rep.record(false, || format!("C = {c}, D = {d}: {e}")),
        }
    }
    rep
}

/// Colength formula against lattice counting, and integrality of the
/// one-step dimension on the germ corpus.
pub fn lattice_suite() -> SuiteReport {
    let mut rep = SuiteReport::new("lattice");
    for q in 1..=7u64 {
        for p in 1..q.max(2) {
            if gcd(p as i64, q as i64) != 1 || (p >= q && q > 1) {
                continue;
            }
            for n in 0..=10u64 {
                let f = monomial_colength(p, q, n).unwrap();
                let b = lattice_count(p, q, n);
                rep.record(f == b, || {
                    format!("F({p},{q},{n}) = {f}, lattice count {b}")
                });
            }
        }
    }
    for (f, _) in germ_corpus(0x5eed_0001, 120, 6, 8) {
        for p in 1..=5u64 {
            for q in 1..=5u64 {
                if gcd(p as i64, q as i64) != 1 {
                    continue;
                }
                let nu = weighted_order(&f, p, q).unwrap();
                if !nu.is_multiple_of(p * q) {
                    continue;
                }
                let v = one_step_dim(&f, p, q).unwrap();
                rep.record(is_nonneg_integer(&v), || {
                    format!("one_step_dim({f}, {p}, {q}) = {v}")
                });
            }
        }
    }
    rep
}

/// δ^ω of `x^p − y^q` against the closed form, for coprime `p, q ≤ 8` on
/// every normalized type with `d ≤ 6` where the germ is semi-invariant.
pub fn quasihom_suite() -> SuiteReport {
    let mut rep = SuiteReport::new("quasihom");
    for t in normalized_types(6) {
        for p in 1..=8i64 {
            for q in 1..=8i64 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let f = SparsePoly::from_int_terms(
                    &["x", "y"],
                    &[(&[p as u32, 0], 1), (&[0, q as u32], -1)],
                );
                if semi_invariance_check(&f, &t).is_none() {
                    continue;
                }
                let expected = quasihomogeneous_delta(p, q, t.d());
                for mode in [Mode::Strong, Mode::Plain] {
                    match resolve_with(&f, t, &ResolveOptions::with_mode(mode)) {
                        Ok(tree) => {
                            let got = delta_w(&tree).total;
                            rep.record(got == expected, || format!("x^{p} - y^{q} on {t} ({mode:?}): {got}, closed form {expected}"));
                        }
                        Err(e) => rep.record(false, || format!("x^{p} - y^{q} on {t}: {e}")),
                    }
                }
            }
        }
    }
    rep
}

/// δ^ω(C·D) = δ^ω(C) + δ^ω(D) + (C·D) on pairs of semi-invariant germs.
pub fn additivity_suite(count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("additivity");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let types = normalized_types(5);
    let mut attempts = 0;
    while rep.total < count && attempts < 50 * count {
        attempts += 1;
        let t = if rep.total.is_multiple_of(2) {
            QuotType::smooth()
        } else {
            *types.choose(&mut rng).unwrap()
        };
        let c = random_germ(&mut rng, &t, 5);
        let d = random_germ(&mut rng, &t, 5);
        if !c.mul(&d).is_squarefree().unwrap_or(false) {
            continue;
        }
        match delta_additivity_check(&c, &d, t) {
            Ok((l, r)) => rep.record(l == r, || {
                format!("C = {c}, D = {d} on {t}: δ^ω(CD) = {l}, sum = {r}")
            }),
            Err(e) if skippable(&e) => rep.skipped += 1,
            Err(e) => rep.record(false, || format!("C = {c}, D = {d} on {t}: {e}")),
        }
    }
    rep
}
