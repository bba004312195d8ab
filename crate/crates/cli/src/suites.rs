use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use locc_rates::functionals::{
    binary_entropy, check_additivity, check_chain_rule, check_continuity_estimate,
    check_monotone_on_average, continuity_a, continuity_b, measure_flag, measure_local,
};
use locc_rates::monoid::{
    achievable_rate_lower_bound, majorization_geq, monoid_of_bipartite_pure, BipartitePureMonoid,
    NaturalsMonoid, SearchParams,
};
use locc_rates::protocols::{
    binomial_decomposition, check_projection_bound, concentration_simulate, concentration_yield,
    continuity_construction, continuity_protocol_check, expected_log_ghz,
    expected_log_ghz_types_lower, log_binomial_bounds_row,
};
use locc_rates::rates::{
    bipartite_pure_rate, family_separates, ghz_rate_bounds, rate_upper_bound,
};
use locc_rates::state::random::{random_dims, random_pair_at_distance, random_pure};
use locc_rates::{Error, Execution, Functional, PureState, Result, SchmidtSpectrum};

use crate::commands::{CHECK_TOL, ENTROPY_TOL, SANDWICH_TOL, SUM_TOL};
use crate::report::{Record, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Continuity,
    Rates,
    Monoid,
    Protocols,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Axioms,
        Suite::Continuity,
        Suite::Rates,
        Suite::Monoid,
        Suite::Protocols,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Continuity => "continuity",
            Suite::Rates => "rates",
            Suite::Monoid => "monoid",
            Suite::Protocols => "protocols",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

fn random_state(rng: &mut ChaCha8Rng, k: usize, max_dim: usize) -> Result<PureState> {
    let dims = random_dims(rng, k, max_dim)?;
    random_pure(rng, &dims)
}

/// Worst value of a family of checks; passes iff `pass(worst)`.
fn worst_max(name: &str, count: usize, worst: f64, tol: f64) -> Record {
    Record::check(name, worst, tol, worst <= tol).with_note(format!("max over {count} instances"))
}

fn worst_min(name: &str, count: usize, worst: f64, tol: f64) -> Record {
    Record::check(name, worst, tol, worst >= -tol).with_note(format!("min over {count} instances"))
}

/// Runs a named verification suite. Deterministic given `seed`.
pub fn run_suite(suite: Suite, seed: u64, exec: Execution) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results = match suite {
        Suite::Axioms => axioms(&mut rng)?,
        Suite::Continuity => continuity(&mut rng)?,
        Suite::Rates => rates(&mut rng, exec)?,
        Suite::Monoid => monoid(&mut rng, exec)?,
        Suite::Protocols => protocols(&mut rng, seed, exec)?,
    };
    let inputs = json!({ "suite": suite.name(), "seed": seed });
    Ok(Report::new("verify", inputs, results, None))
}

fn axioms(rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut norm = 0.0f64;
    for k in 2..=4 {
        let ghz = PureState::ghz(2, k)?;
        for f in Functional::all_cut_entropies(k) {
            norm = norm.max((f.evaluate(&ghz)? - 1.0).abs());
        }
    }
    out.push(worst_max("normalization |E(GHZ) - 1|", 3, norm, 1e-12));

    let ghz3 = PureState::ghz(3, 3)?;
    let mut log_r = 0.0f64;
    for f in Functional::all_cut_entropies(3) {
        log_r = log_r.max((f.evaluate(&ghz3)? - 3f64.log2()).abs());
    }
    out.push(worst_max("|E(GHZ_3) - log 3|", 1, log_r, ENTROPY_TOL));

    let n = 100;
    let (mut add, mut chain, mut flag, mut local) = (0.0f64, 0.0f64, f64::INFINITY, f64::INFINITY);
    for _ in 0..n {
        let k = rng.random_range(2..=3);
        let phi = random_state(rng, k, 3)?;
        let psi = random_state(rng, k, 3)?;
        let p = rng.random_range(1..=9) as f64 / 10.0;
        let sum = PureState::direct_sum(&phi, &psi, p)?;
        let party = rng.random_range(0..k);
        let flags = measure_flag(&sum, party)?;
        let d = phi.dims().get(party);
        let classes: Vec<Vec<usize>> = {
            let split = rng.random_range(0..=d);
            let (a, b): (Vec<usize>, Vec<usize>) = (0..d).partition(|&i| i < split);
            [a, b].into_iter().filter(|c| !c.is_empty()).collect()
        };
        let measured = measure_local(&phi, party, &classes)?;
        for f in Functional::all_cut_entropies(k) {
            add = add.max(check_additivity(&f, &phi, &psi, ENTROPY_TOL)?.residual);
            chain = chain.max(check_chain_rule(&f, &phi, &psi, p, 1e-8)?.residual);
            flag = flag.min(check_monotone_on_average(&f, &sum, &flags, CHECK_TOL)?.residual);
            local = local.min(check_monotone_on_average(&f, &phi, &measured, CHECK_TOL)?.residual);
        }
    }
    out.push(worst_max("additivity residual", n, add, ENTROPY_TOL));
    out.push(worst_max("chain rule residual", n, chain, 1e-8));
    out.push(worst_min("flag measurement slack", n, flag, CHECK_TOL));
    out.push(worst_min("local measurement slack", n, local, CHECK_TOL));
    Ok(out)
}

fn continuity(rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let n = 200;
    let mut worst = f64::INFINITY;
    for _ in 0..n {
        let k = rng.random_range(2..=3);
        let dims = random_dims(rng, k, 3)?;
        let phi = random_pure(rng, &dims)?;
        let psi = if dims.total() < 2 || rng.random_bool(0.5) {
            random_pure(rng, &dims)?
        } else {
            let d = rng.random_range(0.0..0.5);
            random_pair_at_distance(rng, &dims, d)?.1
        };
        for f in Functional::all_cut_entropies(k) {
            worst = worst.min(check_continuity_estimate(&f, &phi, &psi)?.margin);
        }
    }
    let zero = (1..6).all(|k| {
        continuity_a(0.0, k).is_ok_and(|a| a == 0.0) && continuity_b(0.0, k).is_ok_and(|b| b == 0.0)
    });
    let mut monotone = true;
    let mut prev = (0.0, 0.0);
    for i in 1..100 {
        let d = i as f64 / 100.0;
        let cur = (continuity_a(d, 3)?, continuity_b(d, 3)?);
        monotone &= cur.0 >= prev.0 && cur.1 >= prev.1;
        prev = cur;
    }
    Ok(vec![
        worst_min("continuity margin", n, worst, CHECK_TOL),
        Record::check("a(0) = b(0) = 0", if zero { 0.0 } else { 1.0 }, 0.0, zero),
        Record::check("a, b nondecreasing in D", if monotone { 0.0 } else { 1.0 }, 0.0, monotone),
    ])
}

fn rates(rng: &mut ChaCha8Rng, exec: Execution) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let epr = PureState::ghz(2, 2)?;
    let r = bipartite_pure_rate(&PureState::from_schmidt(&[0.9, 0.1])?, &epr)?.value;
    let h = binary_entropy(0.9)?;
    out.push(Record::check("|R(schmidt[0.9,0.1] -> EPR) - h(0.9)|", (r - h).abs(), 1e-12, (r - h).abs() <= 1e-12));

    let n = 50;
    let (mut recip, mut agree) = (0.0f64, 0.0f64);
    let mut used = 0;
    for _ in 0..n {
        let a = random_state(rng, 2, 4)?;
        let b = random_state(rng, 2, 4)?;
        let (Ok(ab), Ok(ba)) = (bipartite_pure_rate(&a, &b), bipartite_pure_rate(&b, &a)) else {
            continue;
        };
        used += 1;
        recip = recip.max((ab.value * ba.value - 1.0).abs());
        agree = agree.max((rate_upper_bound(&a, &b)?.value - ab.value).abs());
    }
    out.push(worst_max("reciprocity |R R' - 1|", used, recip, CHECK_TOL));
    out.push(worst_max("|upper bound - exact rate|, two parties", used, agree, 1e-12));

    let x = monoid_of_bipartite_pure(&PureState::from_schmidt(&[0.75, 0.25])?)?;
    let y = monoid_of_bipartite_pure(&epr)?;
    let params = SearchParams {
        delta: 0.05,
        eps: 0.05,
        n_max: 100,
    };
    let lower = achievable_rate_lower_bound(&BipartitePureMonoid, &x, &y, params, exec)?.best_ratio;
    let upper = rate_upper_bound(&PureState::from_schmidt(&[0.75, 0.25])?, &epr)?.value;
    let slack = upper + params.delta - lower;
    out.push(
        Record::check("sandwich: upper + delta - lower", slack, SANDWICH_TOL, slack >= -SANDWICH_TOL)
            .with_note(format!("lower = {lower:.12}, upper = {upper:.12}")),
    );

    let e = |a, b| PureState::epr_between(a, b, 3);
    let triangle = e(0, 1)?.tensor(&e(1, 2)?)?.tensor(&e(0, 2)?)?;
    let ghz2 = PureState::ghz(2, 3)?.tensor_power(2)?;
    let bt = ghz_rate_bounds(&triangle)?;
    let bg = ghz_rate_bounds(&ghz2)?;
    let gap = (bt.distill_upper - 2.0)
        .abs()
        .max((bt.cost_lower - 2.0).abs())
        .max((bg.distill_upper - 2.0).abs())
        .max((bg.cost_lower - 2.0).abs());
    out.push(worst_max("|GHZ bounds - (2, 2)|, triangle and GHZ^2", 2, gap, ENTROPY_TOL));
    let separates = family_separates(&triangle, &ghz2, ENTROPY_TOL)?;
    out.push(
        Record::check("family separates triangle from GHZ^2", if separates { 1.0 } else { 0.0 }, 0.0, !separates)
            .with_note("expected 0: the built-in cut-entropy family cannot separate these states"),
    );
    let zero = rate_upper_bound(&e(0, 1)?, &PureState::ghz(2, 3)?)?.value;
    out.push(Record::check("R(EPR_AB -> GHZ) upper bound", zero, 0.0, zero == 0.0));
    Ok(out)
}

fn monoid(rng: &mut ChaCha8Rng, exec: Execution) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let toy = NaturalsMonoid::new(1);
    let exact = SearchParams {
        delta: 0.0,
        eps: 0.0,
        n_max: 20,
    };
    let t = achievable_rate_lower_bound(&toy, &5, &2, exact, exec)?.best_ratio;
    out.push(Record::check("toy |best_ratio - 5/2|", (t - 2.5).abs(), 0.0, t == 2.5));

    let m = BipartitePureMonoid;
    let x = monoid_of_bipartite_pure(&PureState::from_schmidt(&[0.75, 0.25])?)?;
    let y = monoid_of_bipartite_pure(&PureState::ghz(2, 2)?)?;
    let run = |x: &SchmidtSpectrum, y: &SchmidtSpectrum, eps, n_max| {
        let params = SearchParams {
            delta: 0.05,
            eps,
            n_max,
        };
        achievable_rate_lower_bound(&m, x, y, params, exec).map(|r| r.best_ratio)
    };
    let r200 = run(&x, &y, 0.05, 200)?;
    let r50 = run(&x, &y, 0.05, 50)?;
    let r_tight = run(&x, &y, 0.02, 100)?;
    let r_loose = run(&x, &y, 0.05, 100)?;
    let cap = binary_entropy(0.25)? + 0.05;
    out.push(
        Record::check("distillation best_ratio, n_max = 200", r200, 0.0, (0.70..=cap).contains(&r200))
            .with_note(format!("required in [0.70, {cap:.6}]")),
    );
    out.push(Record::check("best_ratio(200) - best_ratio(50)", r200 - r50, 0.0, r200 >= r50));
    out.push(Record::check("best_ratio(eps 0.05) - best_ratio(eps 0.02)", r_loose - r_tight, 0.0, r_loose >= r_tight));
    let dil = run(&y, &x, 0.05, 100)?;
    let dil_cap = (1.0 + 0.05) / binary_entropy(0.25)?;
    out.push(
        Record::check("dilution cap - best_ratio", dil_cap - dil, SANDWICH_TOL, dil <= dil_cap + SANDWICH_TOL)
            .with_note(format!("EPR -> schmidt[0.75,0.25], best_ratio = {dil:.12}")),
    );

    let n = 30;
    let mut reflexive = true;
    let mut to_unit = true;
    for _ in 0..n {
        let len = rng.random_range(1..=6);
        let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.01..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|v| v / total).collect();
        let s = SchmidtSpectrum::from_probabilities(&probs)?.power(rng.random_range(1..=8));
        reflexive &= majorization_geq(&s, &s, 0.0);
        to_unit &= majorization_geq(&s, &SchmidtSpectrum::trivial(), 0.0);
    }
    out.push(Record::check("majorization reflexive", if reflexive { 0.0 } else { 1.0 }, 0.0, reflexive).with_note(format!("{n} random spectra")));
    out.push(Record::check("every element reaches the unit", if to_unit { 0.0 } else { 1.0 }, 0.0, to_unit).with_note(format!("{n} random spectra")));
    Ok(out)
}

fn protocols(rng: &mut ChaCha8Rng, seed: u64, exec: Execution) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let grid = [(1u64, 0.3), (10, 0.5), (100, 0.25), (700, 0.1), (1500, 0.9)];
    let mut mass = 0.0f64;
    let (mut order, mut types) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(n, p) in &grid {
        let total: f64 = binomial_decomposition(n, p)?.iter().map(|b| b.probability).sum();
        mass = mass.max((total - 1.0).abs());
        let y = concentration_yield(n, p)?;
        let e = expected_log_ghz(n, p)?;
        order = order.max(y - e).max(e - binary_entropy(p)?);
        types = types.max(expected_log_ghz_types_lower(n, p)? - e);
    }
    out.push(worst_max("|sum of branch probabilities - 1|", grid.len(), mass, 1e-9));
    out.push(worst_max("yield <= expected_log_ghz <= h(p) excess", grid.len(), order, SUM_TOL));
    out.push(worst_max("types lower bound - expected_log_ghz", grid.len(), types, SUM_TOL));

    let ns: Vec<u64> = (1..=300).collect();
    let bad: usize = exec
        .map(ns, |n| log_binomial_bounds_row(n).map(|row| row.iter().filter(|b| !b.holds()).count()))
        .into_iter()
        .sum::<Result<usize>>()?;
    out.push(Record::check("log-binomial chain violations, n <= 300", bad as f64, 0.0, bad == 0));

    let y = concentration_yield(2000, 0.25)?;
    let h = binary_entropy(0.25)?;
    out.push(Record::check("|yield(2000, 0.25) - h(0.25)|", (y - h).abs(), 0.02, (y - h).abs() <= 0.02));
    let s = concentration_simulate(500, 0.25, 10_000, seed, exec)?;
    let band = 3.0 * s.std_error;
    out.push(
        Record::check("|simulated mean - yield|, n = 500", (s.mean - s.expected).abs(), band, (s.mean - s.expected).abs() <= band)
            .with_note("10000 shots; tolerance is three standard errors"),
    );

    let n = 50;
    let (mut cons, mut proj, mut u, mut bound) = (0.0f64, 0.0f64, 0.0f64, true);
    let mut count = 0;
    while count < n {
        let k = rng.random_range(2..=3);
        let dims = random_dims(rng, k, 3)?;
        if dims.total() < 2 {
            continue;
        }
        let d = rng.random_range(0.01..0.99);
        let (phi, psi) = random_pair_at_distance(rng, &dims, d)?;
        let c = continuity_construction(&phi, &psi)?;
        cons = cons.max(c.omega_unit_residual).max(c.cancellation_residual);
        proj = proj.max(continuity_protocol_check(&c, &phi, &psi, CHECK_TOL)?.residual);
        u = u.max((c.u - c.u_closed_form()).abs());
        for f in Functional::all_cut_entropies(k) {
            bound &= check_projection_bound(&c, &f, &phi, &psi, CHECK_TOL)?.pass;
        }
        count += 1;
    }
    out.push(worst_max("construction constraint residual", n, cons, CHECK_TOL));
    out.push(worst_max("projection residual", n, proj, CHECK_TOL));
    out.push(worst_max("|u - closed form|", n, u, CHECK_TOL));
    out.push(Record::check("projection bound holds", if bound { 0.0 } else { 1.0 }, 0.0, bound).with_note(format!("{n} pairs, every cut entropy")));
    Ok(out)
}
