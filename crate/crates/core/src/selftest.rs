//! The acceptance checks, shared by the integration suite and the CLI.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuits::dft_circuit;
use crate::degrees::{
    count_components_r1, deg_closed_dku, deg_join, deg_sigma, deg_sigma_barnes, DegreeTable,
};
use crate::error::Result;
use crate::exact::{ExactMatrix, ExactScalar, IndexSet};
use crate::families::{
    butterfly_jacobian_rank, cauchy, cauchy_det, dft, dft_normalized, sylvester, vandermonde, CauchyParams,
    VandermondeParams,
};
use crate::ideals::cycles::{enumerate_cycle_counts, for_each_cycle, R1Component};
use crate::ideals::generators::{
    avoiding_minor_polys, ee_equation, ee_variant, gen_three_entry, gen_three_minor, gen_two_minor,
    n5r2_quintic, n5r2_sextic, nm2_equations, reduce_support, s5_equation, s5_support,
};
use crate::ideals::poly::MinorPolynomial;
use crate::ideals::sampling::{sample_generic, sample_join_point};
use crate::ideals::{classify_r1_component, expected_join_dim, join_dimension, Support};
use crate::rigidity::{cdft_upper, eigen_upper, max_border_rigid_nm2, max_border_rigid_r1, Witness};
use crate::rng::seeded;

pub const CRITERIA: [(u32, &str, u64); 12] = [
    (1, "degree of sigma_r: product, Barnes and hook routes", 1),
    (2, "join degrees: recursion against alternating sum", 60),
    (3, "closed forms D(n,k,1) and D(n,k,2)", 60),
    (4, "r = 1 component counts", 300),
    (5, "certificate equations vanish on joins", 300),
    (6, "propagated equations vanish", 300),
    (7, "weight of the degree-9 equation", 60),
    (8, "join dimensions and support reduction", 120),
    (9, "maximal border rigidity deciders", 120),
    (10, "DFT upper bounds", 300),
    (11, "FFT circuits and the butterfly Jacobian", 60),
    (12, "family identities and nonvanishing minors", 300),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok) && self.elapsed <= self.budget
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {} ({} checks, {:.2}s of {}s)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )?;
        for c in self.failures() {
            write!(f, "\n    failed: {}: {}", c.name, c.note)?;
        }
        if self.elapsed > self.budget {
            write!(f, "\n    failed: time budget exceeded")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, ok: bool, note: impl Into<String>) {
        self.0.push(Check { name: name.into(), ok, note: note.into() });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let ok = got == want;
        self.add(name, ok, format!("got {got:?}, expected {want:?}"));
    }
}

pub fn run_criterion(id: u32) -> Result<CriterionReport> {
    let &(_, title, budget) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| crate::Error::InvalidArgument(format!("no criterion {id}")))?;
    let start = Instant::now();
    let mut c = Checks::default();
    match id {
        1 => c1(&mut c)?,
        2 => c2(&mut c)?,
        3 => c3(&mut c)?,
        4 => c4(&mut c)?,
        5 => c5(&mut c)?,
        6 => c6(&mut c)?,
        7 => c7(&mut c)?,
        8 => c8(&mut c)?,
        9 => c9(&mut c)?,
        10 => c10(&mut c)?,
        11 => c11(&mut c)?,
        _ => c12(&mut c)?,
    }
    Ok(CriterionReport {
        id,
        title,
        checks: c.0,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget),
    })
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn c1(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for n in 1..=12 {
        for r in 1..=n {
            if deg_sigma(n, r)? != deg_sigma_barnes(n, r)? {
                bad.push((n, r));
            }
        }
    }
    c.eq("product = Barnes for 1 ≤ r ≤ n ≤ 12", bad, vec![]);
    c.eq("deg σ_1 in Mat_3", deg_sigma(3, 1)?, big(6));
    c.eq("deg σ_2 in Mat_4", deg_sigma(4, 2)?, big(20));
    Ok(())
}

fn c2(c: &mut Checks) -> Result<()> {
    let mut table = DegreeTable::new();
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=10 {
        for r in 1..n {
            for s in 0..=n {
                count += 1;
                if table.recursion(n, r as i64, s) != table.alternating(n, r as i64, s) {
                    bad.push((n, r, s));
                }
            }
        }
    }
    c.add(format!("recursion = alternating sum on {count} triples"), bad.is_empty(), format!("{bad:?}"));
    for n in 4..=10 {
        c.eq(format!("deg_join({n}, {}, 3) = 2n-3", n - 2), deg_join(n, n - 2, 3)?, big(2 * n as i64 - 3));
    }
    c.eq("deg_join(3,1,1)", deg_join(3, 1, 1)?, big(5));
    c.eq("deg_join(3,1,2)", deg_join(3, 1, 2)?, big(4));
    Ok(())
}

fn c3(c: &mut Checks) -> Result<()> {
    for n in 4..=10 {
        let d = deg_closed_dku(n, 2, 1)?;
        c.eq(format!("D({n},2,1) = 2n-3"), d.clone(), big(2 * n as i64 - 3));
        c.eq(format!("D({n},2,1) = recursion"), d, deg_join(n, n - 2, 3)?);
    }
    c.eq("D(4,2,2)", deg_closed_dku(4, 2, 2)?, big(9));
    c.eq("D(4,2,2) = recursion", deg_closed_dku(4, 2, 2)?, deg_join(4, 2, 2)?);
    Ok(())
}

/// Distinct components found by classifying every support of size `n² - 2n`.
fn components_by_classification(n: usize) -> Result<BTreeSet<(usize, Vec<Vec<(usize, usize)>>)>> {
    let all: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut found = BTreeSet::new();
    for comp in all.iter().copied().combinations(2 * n) {
        let s = Support::new(n, all.iter().copied().filter(|p| !comp.contains(p)))?;
        if let R1Component::Cycle { k, binomial, .. } = classify_r1_component(&s, 0)? {
            let mut monos: Vec<Vec<(usize, usize)>> = binomial
                .terms()
                .iter()
                .map(|t| t.factors.iter().map(|f| (f.i.as_slice()[0], f.j.as_slice()[0])).sorted().collect())
                .collect();
            monos.sort();
            found.insert((k, monos));
        }
    }
    Ok(found)
}

fn c4(c: &mut Checks) -> Result<()> {
    let (total, per) = count_components_r1(3)?;
    c.eq("count at n = 3", total, big(15));
    c.eq("breakdown at n = 3", per, vec![(2, big(9)), (3, big(6))]);
    for n in 2..=5 {
        let (_, per) = count_components_r1(n)?;
        let per: Vec<(usize, BigInt)> = per;
        let enumerated: Vec<(usize, BigInt)> =
            enumerate_cycle_counts(n).into_iter().map(|(k, v)| (k, BigInt::from(v))).collect();
        c.eq(format!("formula = cycle enumeration at n = {n}"), per, enumerated);
    }
    for n in 3..=4 {
        let found = components_by_classification(n)?;
        let mut by_k: Vec<(usize, BigInt)> = Vec::new();
        for (k, _) in &found {
            match by_k.last_mut() {
                Some(last) if last.0 == *k => last.1 += 1,
                _ => by_k.push((*k, BigInt::from(1))),
            }
        }
        c.eq(format!("formula = classification of all supports at n = {n}"), count_components_r1(n)?.1, by_k);
    }
    Ok(())
}

const SAMPLES: u64 = 100;

fn vanishing(c: &mut Checks, name: &str, p: &MinorPolynomial, r: usize, s: &Support) -> Result<()> {
    let n = s.n();
    let mut bad = None;
    for seed in 0..SAMPLES {
        if !p.evaluate(&sample_join_point(n, r, s, seed))?.is_zero() {
            bad = Some(seed);
            break;
        }
    }
    c.add(format!("{name} vanishes on {SAMPLES} samples"), bad.is_none(), format!("nonzero at seed {bad:?}"));
    let generic = p.evaluate(&sample_generic(n, 1_000_003))?;
    c.add(format!("{name} nonzero at a generic point"), !generic.is_zero(), "zero at the generic point");
    Ok(())
}

fn set(s: &str) -> IndexSet {
    IndexSet::from_digits(s)
}

fn complement_of(n: usize, comp: &[(usize, usize)]) -> Result<Support> {
    Support::new(n, (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|p| !comp.contains(p)))
}

fn c5(c: &mut Checks) -> Result<()> {
    let d3 = Support::diagonal(3, 3);
    let d5 = Support::diagonal(5, 5);
    vanishing(c, "s1 on Mat_3", &gen_two_minor(&set("12"), &set("13"), &set("13"), &set("12"), (1, 1), &d3)?, 1, &d3)?;
    vanishing(c, "s1 on Mat_5, r = 2", &gen_two_minor(&set("123"), &set("345"), &set("345"), &set("123"), (3, 3), &d5)?, 2, &d5)?;
    let full = IndexSet::full(3);
    vanishing(c, "s3 on Mat_3", &gen_three_entry(&full, &full, [(1, 1), (2, 2), (3, 3)], &d3)?, 1, &d3)?;
    let s4 = Support::new(4, [(1, 2), (2, 4), (4, 1)])?;
    let f4 = IndexSet::full(4);
    vanishing(c, "s3 on Mat_4, r = 2", &gen_three_entry(&f4, &f4, [(1, 2), (2, 4), (4, 1)], &s4)?, 2, &s4)?;
    let cyc = [(1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (2, 3), (3, 4), (4, 1)];
    let s8 = complement_of(4, &cyc)?;
    let s2 = gen_three_minor(&set("12"), &set("12"), &set("34"), &set("14"), &set("23"), &set("13"), [(2, 1), (3, 1)], &s8)?;
    vanishing(c, "s2 on Mat_4", &s2, 1, &s8)?;
    vanishing(c, "eE", &ee_equation(), 1, &d3)?;
    vanishing(c, "eE variant", &ee_variant(), 1, &d3)?;
    vanishing(c, "s5", &s5_equation(), 2, &s5_support())?;
    vanishing(c, "n = 5 quintic", &n5r2_quintic(), 2, &d5)?;
    vanishing(c, "n = 5 sextic", &n5r2_sextic(), 2, &d5)?;
    for n in 3..=5 {
        for k in 2..=n {
            let w = for_each_cycle(n, k, |w| std::ops::ControlFlow::Break(w.clone())).expect("k ≤ n");
            let (l, r) = w.monomials();
            let s = complement_of(n, &[l, r].concat())?;
            vanishing(c, &format!("cycle binomial k = {k} on Mat_{n}"), &w.binomial(n), 1, &s)?;
        }
    }
    for s in [
        Support::diagonal(4, 3),
        Support::new(4, [(1, 1), (1, 2), (2, 3)])?,
        Support::new(5, [(1, 3), (4, 1), (5, 5)])?,
        Support::new(6, [(2, 2), (3, 5), (6, 1)])?,
    ] {
        let (case, eqs) = nm2_equations(&s)?;
        for p in eqs {
            vanishing(c, &format!("nm2 {case:?} S = {s}"), &p, s.n() - 2, &s)?;
        }
    }
    for (s, r) in [(Support::diagonal(4, 2), 1), (Support::new(5, [(1, 1), (1, 2), (3, 4)])?, 2)] {
        let polys = avoiding_minor_polys(&s, r);
        let mut bad = 0;
        for p in &polys {
            let mut sub = Checks::default();
            vanishing(&mut sub, "", p, r, &s)?;
            bad += sub.0.iter().filter(|x| !x.ok).count();
        }
        c.add(format!("{} avoiding minors for S = {s}, r = {r}", polys.len()), bad == 0 && !polys.is_empty(), format!("{bad} failures"));
    }
    Ok(())
}

fn c6(c: &mut Checks) -> Result<()> {
    for q in 1..=2 {
        let p = ee_equation().propagate(q)?;
        let s = Support::diagonal(3 + q, 3);
        vanishing(c, &format!("eE propagated by {q}"), &p, 1 + q, &s)?;
    }
    Ok(())
}

fn c7(c: &mut Checks) -> Result<()> {
    let w = s5_equation().weight();
    let want = vec![2, 2, 2, 1, 1, 1];
    c.add(
        "s5 is a weight vector of weight (1²,2²,3²,4,5,6)×(1²,2²,3²,4,5,6)",
        w.as_ref().is_some_and(|w| w.lambda == want && w.mu == want),
        format!("got {}", w.map_or("no weight".to_string(), |w| w.to_string())),
    );
    Ok(())
}

fn random_diagonal_support<R: Rng>(rng: &mut R, n: usize, s: usize) -> Result<Support> {
    let mut rows: Vec<usize> = (1..=n).collect();
    let mut cols: Vec<usize> = (1..=n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    Support::new(n, rows.into_iter().zip(cols).take(s))
}

fn c8(c: &mut Checks) -> Result<()> {
    let mut rng = seeded(8);
    let mut bad = Vec::new();
    for case in 0..50u64 {
        let n = rng.gen_range(2..=6);
        let r = rng.gen_range(0..n);
        let size = rng.gen_range(0..=n);
        let s = random_diagonal_support(&mut rng, n, size)?;
        let d = join_dimension(n, r, &s, case);
        if d.value != expected_join_dim(n, r, s.len()) {
            bad.push(format!("n={n} r={r} S={s}: {}", d.value));
        }
    }
    c.add("join dimension = min{r(2n-r)+s, n²} on 50 cases", bad.is_empty(), bad.join("; "));
    let mut bad = Vec::new();
    let mut reduced = 0;
    for case in 0..20u64 {
        let n = rng.gen_range(3..=6);
        let r = rng.gen_range(1..n - 1);
        let mut pos: BTreeSet<(usize, usize)> = BTreeSet::new();
        let line = rng.gen_range(1..=n);
        for t in 1..=n {
            pos.insert(if case % 2 == 0 { (t, line) } else { (line, t) });
        }
        for _ in 0..rng.gen_range(0..n) {
            pos.insert((rng.gen_range(1..=n), rng.gen_range(1..=n)));
        }
        let s = Support::new(n, pos)?;
        let t = reduce_support(&s, r);
        if t.len() < s.len() {
            reduced += 1;
        }
        let (a, b) = (join_dimension(n, r, &s, case).value, join_dimension(n, r, &t, case).value);
        if a != b {
            bad.push(format!("n={n} r={r} S={s}: {a} vs {b}"));
        }
    }
    c.add("dimension invariant under reduce_support on 20 cases", bad.is_empty(), bad.join("; "));
    c.add("reduction removed entries", reduced == 20, format!("{reduced} of 20 supports shrank"));
    Ok(())
}

fn symmetric(n: usize, seed: u64) -> ExactMatrix {
    let g = sample_generic(n, seed);
    ExactMatrix::from_fn(n, n, |i, j| if i <= j { g.get(i, j).clone() } else { g.get(j, i).clone() })
}

fn c9(c: &mut Checks) -> Result<()> {
    for n in 4..=5 {
        let cm = cauchy(&CauchyParams::seeded(n, 90 + n as u64))?;
        let vm = vandermonde(&VandermondeParams::seeded(n, 90 + n as u64))?;
        for (name, m) in [("Cauchy", &cm), ("Vandermonde", &vm)] {
            let d = max_border_rigid_r1(m)?;
            c.add(format!("{name} {n}x{n} maximally 1-border rigid"), d.result, format!("{:?}", d.witness));
            let d = max_border_rigid_nm2(m)?;
            c.add(format!("{name} {n}x{n} maximally (n-2)-border rigid"), d.result, format!("{:?}", d.witness));
        }
        let d = max_border_rigid_r1(&symmetric(n, 7))?;
        let transposed = match &d.witness {
            Some(Witness::Cycle(w)) => {
                let (l, r) = w.monomials();
                let t: Vec<(usize, usize)> = r.iter().map(|&(a, b)| (b, a)).sorted().collect();
                l.iter().copied().sorted().collect::<Vec<_>>() == t
            }
            _ => false,
        };
        c.add(format!("symmetric {n}x{n} fails with a transpose cycle"), !d.result && transposed, format!("{:?}", d.witness));
    }
    Ok(())
}

fn c10(c: &mut Checks) -> Result<()> {
    let m = dft_normalized(16)?;
    let i = ExactScalar::root_of_unity(4);
    let e = eigen_upper(&m, &[ExactScalar::one(), -ExactScalar::one(), i.clone(), -i])?;
    c.eq("multiplicity of the leading eigenvalue", e.multiplicity, 5);
    c.add("leading eigenvalue is 1", e.lambda.is_one(), format!("{}", e.lambda));
    let mut ks: Vec<usize> = e.multiplicities.iter().map(|x| x.1).collect();
    ks.sort();
    c.eq("multiplicity pattern (m+1, m, m, m-1)", ks, vec![3, 4, 4, 5]);
    c.eq("rank bound r", e.bound.r, 11);
    c.add("at most 16 changes", e.bound.upper <= 16, format!("{}", e.bound.upper));
    c.add("DFT_16 witness verified", e.bound.verify_upper(&m)?, "rank check failed");
    let (mw, b) = cdft_upper(5)?;
    c.eq("cdft_upper(5) changes", b.upper, 13);
    c.add("cdft_upper(5) rank one", b.verify_upper(&mw)?, "rank check failed");
    Ok(())
}

fn c11(c: &mut Checks) -> Result<()> {
    for k in 1..=4u32 {
        let circ = dft_circuit(k);
        c.add(format!("dft_circuit({k}) evaluates to DFT_{}", 1 << k), circ.evaluate() == dft(1 << k), "");
        c.eq(format!("dft_circuit({k}) size"), circ.size(), (1usize << (k + 1)) * k as usize);
    }
    c.eq("butterfly Jacobian rank at n = 8", butterfly_jacobian_rank(3, 11), 32);
    Ok(())
}

fn first_zero_minor(m: &ExactMatrix) -> Result<Option<(usize, IndexSet, IndexSet)>> {
    let n = m.nrows();
    for size in 1..=n {
        for i in IndexSet::subsets(n, size) {
            for j in IndexSet::subsets(n, size) {
                if m.minor(&i, &j)?.is_zero() {
                    return Ok(Some((size, i, j)));
                }
            }
        }
    }
    Ok(None)
}

fn c12(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for draw in 0..50u64 {
        let n = 1 + (draw % 5) as usize;
        let p = CauchyParams::seeded(n, 1200 + draw);
        if cauchy_det(&p)? != cauchy(&p)?.determinant()? {
            bad.push(draw);
        }
    }
    c.add("Cauchy determinant closed form on 50 draws", bad.is_empty(), format!("{bad:?}"));
    let mut families: Vec<(String, ExactMatrix)> = vec![("DFT_5".into(), dft(5))];
    for n in 2..=5 {
        families.push((format!("Cauchy {n}x{n}"), cauchy(&CauchyParams::seeded(n, 1300 + n as u64))?));
        families.push((format!("Vandermonde {n}x{n}"), vandermonde(&VandermondeParams::seeded(n, 1300 + n as u64))?));
    }
    for k in 1..=2 {
        families.push((format!("Sylvester {0}x{0}", 1 << k), sylvester(k)));
    }
    for (name, m) in families {
        let z = first_zero_minor(&m)?;
        let note = match &z {
            Some((size, i, j)) => format!("the {size}x{size} minor on rows {{{i}}}, columns {{{j}}} is zero"),
            None => String::new(),
        };
        c.add(format!("all minors of {name} nonzero"), z.is_none(), note);
    }
    Ok(())
}

pub fn run_all() -> Result<Vec<CriterionReport>> {
    CRITERIA.iter().map(|c| run_criterion(c.0)).collect()
}
