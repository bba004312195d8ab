use serde_json::json;

use locc_rates::functionals::{
    binary_entropy, check_continuity_estimate, continuity_a, continuity_b, CONTINUITY_VACUOUS_AT,
};
use locc_rates::monoid::{
    achievable_rate_lower_bound, monoid_of_bipartite_pure, BipartitePureMonoid, SearchParams,
};
use locc_rates::protocols::{
    check_projection_bound, concentration_simulate, concentration_yield_sweep,
    continuity_construction, continuity_protocol_check, expected_log_ghz_with,
};
use locc_rates::rates::{family_values, rate_upper_bound_with};
use locc_rates::state::parse_state;
use locc_rates::{Error, Execution, Functional, LocalDims, PureState, Result};

use crate::report::{Record, Report, Table};

/// Accuracy claimed for entropies computed from eigen/singular values.
pub const ENTROPY_TOL: f64 = 1e-9;
/// Accuracy claimed for exact log-domain binomial sums.
pub const SUM_TOL: f64 = 1e-12;
/// Slack allowed on inequality checks.
pub const CHECK_TOL: f64 = 1e-9;
/// Slack on the monoid sandwich `best_ratio ≤ (E(x) + δ) / E(y)`.
pub const SANDWICH_TOL: f64 = 1e-6;

fn parse(spec: &str) -> Result<PureState> {
    parse_state(spec)
}

fn functional_records(label: &str, phi: &PureState, exec: Execution) -> Result<Vec<Record>> {
    Ok(family_values(phi, exec)?
        .into_iter()
        .map(|(f, v)| Record::value(format!("E[{f}]({label})"), v, ENTROPY_TOL))
        .collect())
}

pub fn rate(from: &str, to: &str, seed: u64, exec: Execution) -> Result<Report> {
    let phi = parse(from)?;
    let psi = parse(to)?;
    let est = rate_upper_bound_with(&phi, &psi, exec)?;
    let mut results = functional_records("from", &phi, exec)?;
    results.extend(functional_records("to", &psi, exec)?);
    results.push(
        Record::value("rate", est.value, ENTROPY_TOL)
            .with_note(format!("{}; {}", est.kind, est.certificate)),
    );
    let inputs = json!({
        "from": from,
        "to": to,
        "parties": phi.parties(),
        "seed": seed,
    });
    Ok(Report::new("rate", inputs, results, None))
}

pub struct MonoidRateArgs<'a> {
    pub from: &'a str,
    pub to: &'a str,
    pub delta: f64,
    pub eps: f64,
    pub n_max: u64,
}

pub fn monoid_rate(args: &MonoidRateArgs, seed: u64, exec: Execution) -> Result<Report> {
    let phi = parse(args.from)?;
    let psi = parse(args.to)?;
    let x = monoid_of_bipartite_pure(&phi)?;
    let y = monoid_of_bipartite_pure(&psi)?;
    let params = SearchParams {
        delta: args.delta,
        eps: args.eps,
        n_max: args.n_max,
    };
    let found = achievable_rate_lower_bound(&BipartitePureMonoid, &x, &y, params, exec)?;
    let e = Functional::all_cut_entropies(2).remove(0);
    let (ex, ey) = (e.evaluate(&phi)?, e.evaluate(&psi)?);
    if ey <= locc_rates::rates::ZERO_ENTROPY_TOL {
        return Err(Error::SeparableTarget);
    }
    let cap = (ex + args.delta) / ey;
    let w = found.witness;
    let mut results = vec![
        Record::value("best_ratio", found.best_ratio, 0.0).with_note(format!(
            "witness n = {}, m = {}, generator copies = {}, eps = {}",
            w.n, w.m, w.d, w.eps
        )),
        Record::value("E(from)", ex, ENTROPY_TOL),
        Record::value("E(to)", ey, ENTROPY_TOL),
        Record::value("functional cap (E(from) + delta) / E(to)", cap, ENTROPY_TOL),
        Record::check(
            "sandwich: cap - best_ratio",
            cap - found.best_ratio,
            SANDWICH_TOL,
            found.best_ratio <= cap + SANDWICH_TOL,
        ),
    ];
    if let Ok(upper) = rate_upper_bound_with(&phi, &psi, exec) {
        results.push(Record::value("rate", upper.value, ENTROPY_TOL).with_note(upper.kind.to_string()));
    }
    let mut table = Table::new(&["n", "d", "m", "ratio"]);
    for r in &found.table {
        table.rows.push(vec![r.n as f64, r.d as f64, r.m as f64, r.ratio]);
    }
    let inputs = json!({
        "from": args.from,
        "to": args.to,
        "delta": args.delta,
        "eps": args.eps,
        "nmax": args.n_max,
        "seed": seed,
    });
    Ok(Report::new("monoid-rate", inputs, results, Some(table)))
}

pub struct ConcentrateArgs {
    pub n: u64,
    pub p: f64,
    pub simulate: bool,
    pub shots: usize,
}

pub fn concentrate(args: &ConcentrateArgs, seed: u64, exec: Execution) -> Result<Report> {
    let (n, p) = (args.n, args.p);
    let hp = binary_entropy(p)?;
    let sweep = concentration_yield_sweep(n, p, exec)?;
    let ns: Vec<u64> = (1..=n).collect();
    let expected: Vec<f64> = exec
        .map(ns, |m| expected_log_ghz_with(m, p, Execution::Sequential))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["n", "yield", "expected_log_ghz"]);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_order = f64::NEG_INFINITY;
    for ((m, y), e) in sweep.iter().zip(&expected) {
        table.rows.push(vec![*m as f64, *y, *e]);
        worst_excess = worst_excess.max(y - hp);
        worst_order = worst_order.max(y - e);
    }
    let (last_y, last_e) = (sweep[sweep.len() - 1].1, expected[expected.len() - 1]);
    let mut results = vec![
        Record::value("yield", last_y, SUM_TOL),
        Record::value("expected_log_ghz", last_e, SUM_TOL),
        Record::value("h(p)", hp, SUM_TOL),
        Record::value("h(p) - yield", hp - last_y, SUM_TOL),
        Record::check(
            "max over n of yield - h(p)",
            worst_excess,
            SUM_TOL,
            worst_excess <= SUM_TOL,
        ),
        Record::check(
            "max over n of yield - expected_log_ghz",
            worst_order,
            SUM_TOL,
            worst_order <= SUM_TOL,
        ),
    ];
    if args.simulate {
        let s = concentration_simulate(n, p, args.shots, seed, exec)?;
        let band = (3.0 * s.std_error).max(SUM_TOL);
        results.push(Record::value("simulated mean yield", s.mean, s.std_error).with_note("tolerance is one standard error"));
        results.push(Record::value("simulated std dev", s.std_dev, 0.0));
        results.push(
            Record::check(
                "|simulated mean - yield|",
                (s.mean - s.expected).abs(),
                band,
                (s.mean - s.expected).abs() <= band,
            )
            .with_note("tolerance is three standard errors"),
        );
    }
    let inputs = json!({
        "n": n,
        "p": p,
        "simulate": args.simulate,
        "shots": if args.simulate { Some(args.shots) } else { None },
        "seed": seed,
    });
    Ok(Report::new("concentrate", inputs, results, Some(table)))
}

/// Zero-pads both states to the party-wise maximum of their local dimensions.
fn pad_common(phi: PureState, psi: PureState) -> Result<(PureState, PureState)> {
    if phi.parties() != psi.parties() {
        return Err(Error::PartyMismatch {
            left: phi.parties(),
            right: psi.parties(),
        });
    }
    let dims = LocalDims::new(
        phi.dims()
            .as_slice()
            .iter()
            .zip(psi.dims().as_slice())
            .map(|(a, b)| *a.max(b))
            .collect(),
    )?;
    Ok((phi.pad_to(&dims)?, psi.pad_to(&dims)?))
}

pub fn continuity(state_a: &str, state_b: &str, seed: u64) -> Result<Report> {
    let (phi, psi) = pad_common(parse(state_a)?, parse(state_b)?)?;
    let distance = phi.purified_distance(&psi)?;
    let k = phi.parties();
    let mut results = vec![
        Record::value("purified distance", distance, ENTROPY_TOL),
        Record::value("log dim H", phi.dims().log2_total(), 0.0),
    ];
    if distance < CONTINUITY_VACUOUS_AT {
        results.push(Record::value("a(D)", continuity_a(distance, k)?, ENTROPY_TOL));
        results.push(Record::value("b(D)", continuity_b(distance, k)?, ENTROPY_TOL));
    }
    for f in Functional::all_cut_entropies(k) {
        let c = check_continuity_estimate(&f, &phi, &psi)?;
        results.push(
            Record::check(format!("continuity margin [{f}]"), c.margin, CHECK_TOL, c.pass)
                .with_note(format!("|dE| = {:.12}, bound = {:.12}", c.lhs, c.rhs)),
        );
    }
    match continuity_construction(&phi, &psi) {
        Ok(c) => {
            let scale = (c.a.norm() + c.b.norm()).powi(2);
            let ctol = CHECK_TOL * scale;
            let scaled = "tolerance 1e-9 scaled by (|A| + |B|)^2";
            results.push(Record::value("A", c.a.re, ENTROPY_TOL * scale));
            results.push(Record::value("|B|", c.b.norm(), ENTROPY_TOL * scale));
            results.push(Record::value("q = lambda", c.q, ENTROPY_TOL));
            results.push(Record::value("u", c.u, ENTROPY_TOL));
            results.push(Record::check(
                "|u - closed form|",
                (c.u - c.u_closed_form()).abs(),
                CHECK_TOL,
                (c.u - c.u_closed_form()).abs() <= CHECK_TOL,
            ));
            results.push(
                Record::check("omega unit residual", c.omega_unit_residual, ctol, c.omega_unit_residual <= ctol)
                    .with_note(scaled),
            );
            results.push(
                Record::check(
                    "A cancellation residual",
                    c.cancellation_residual,
                    ctol,
                    c.cancellation_residual <= ctol,
                )
                .with_note(scaled),
            );
            let p = continuity_protocol_check(&c, &phi, &psi, CHECK_TOL)?;
            results.push(Record::check("projection residual", p.residual, CHECK_TOL, p.pass));
            results.push(Record::value("projection success weight", p.success_weight, ENTROPY_TOL));
            for f in Functional::all_cut_entropies(k) {
                let b = check_projection_bound(&c, &f, &phi, &psi, CHECK_TOL)?;
                results.push(
                    Record::check(
                        format!("projection bound slack [{f}]"),
                        b.rhs - b.lhs,
                        CHECK_TOL,
                        b.pass,
                    )
                    .with_note(format!(
                        "E(b) - E(a) = {:.12} <= {:.12}",
                        b.increase, b.one_sided_bound
                    )),
                );
            }
        }
        Err(Error::DegeneratePair(d)) => {
            results.push(
                Record::value("construction", d, ENTROPY_TOL)
                    .with_note("degenerate pair: D not in (0, 1), construction skipped"),
            );
        }
        Err(e) => return Err(e),
    }
    let inputs = json!({
        "state_a": state_a,
        "state_b": state_b,
        "parties": k,
        "dims": phi.dims().as_slice(),
        "seed": seed,
    });
    Ok(Report::new("continuity", inputs, results, None))
}
