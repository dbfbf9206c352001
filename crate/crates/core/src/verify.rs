//! The identity suite: every pre-operad axiom and calculus identity,
//! evaluated exhaustively on basis cochains and on seeded random cochains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::endo::{Cochain, ModuleShape};
use crate::error::Result;
use crate::opcalc::{Calculus, Defect, PreOperad};
use crate::report::{CheckRecord, Mode, Outcome, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Composition relations and unit laws.
    Axioms,
    /// Everything built on top of the axioms.
    Identities,
}

type CheckFn<P> = fn(&Calculus<P>, &[&Cochain]) -> Result<Vec<Defect<Cochain>>>;

/// One named check of fixed arity.
pub struct Check<P: PreOperad<Elem = Cochain>> {
    pub name: &'static str,
    pub suite: Suite,
    pub arity: usize,
    /// Only claimed when `μ² = 0`.
    pub needs_associativity: bool,
    pub run: CheckFn<P>,
}

macro_rules! check {
    ($name:expr, $suite:ident, $arity:expr, $assoc:expr, |$c:ident, $x:ident| $body:expr) => {
        Check { name: $name, suite: Suite::$suite, arity: $arity, needs_associativity: $assoc, run: |$c, $x| $body }
    };
}

/// The full check table.
pub fn checks<P: PreOperad<Elem = Cochain>>() -> Vec<Check<P>> {
    vec![
        check!("composition_relations", Axioms, 3, false, |c, x| c.composition_relations(x[0], x[1], x[2])),
        check!("unit_laws", Axioms, 1, false, |c, x| c.unit_laws(x[0])),
        check!("cup_as_tribrace", Identities, 2, false, |c, x| Ok(vec![c.cup_tribrace(x[0], x[1])?])),
        check!("getzler", Identities, 3, false, |c, x| Ok(vec![c.getzler(x[0], x[1], x[2])?])),
        check!("gerstenhaber", Identities, 3, false, |c, x| Ok(vec![c.gerstenhaber(x[0], x[1], x[2])?])),
        check!("bracket_antisymmetry_g1", Identities, 2, false, |c, x| Ok(vec![c.antisymmetry(x[0], x[1])?])),
        check!("jacobi_g2", Identities, 3, false, |c, x| Ok(vec![c.jacobi(x[0], x[1], x[2])?])),
        check!("delta_as_bracket", Identities, 1, false, |c, x| Ok(vec![c.delta_as_bracket(x[0])?])),
        check!("delta_bracket_derivation", Identities, 2, false, |c, x| Ok(vec![c.delta_bracket_derivation(x[0], x[1])?])),
        check!("delta_squared", Identities, 1, false, |c, x| Ok(vec![c.delta_squared(x[0])?])),
        check!("total_deviation", Identities, 2, false, |c, x| Ok(vec![c.total_deviation_identity(x[0], x[1])?])),
        check!("tribrace_deviation", Identities, 3, false, |c, x| Ok(vec![c.tribrace_deviation_identity(x[0], x[1], x[2])?])),
        check!("bracket_deviation", Identities, 3, false, |c, x| Ok(vec![c.bracket_deviation_identity(x[0], x[1], x[2])?])),
        check!("right_translation", Identities, 3, false, |c, x| Ok(vec![c.right_translation(x[0], x[1], x[2])?])),
        check!("cup_associator", Identities, 3, false, |c, x| Ok(vec![c.cup_associator(x[0], x[1], x[2])?])),
        check!("cup_derivation_obstruction", Identities, 2, false, |c, x| Ok(vec![c.cup_derivation(x[0], x[1])?])),
        check!("delta_squared_zero", Identities, 1, true, |c, x| {
            let dd = c.delta(&c.delta(x[0])?)?;
            let zero = c.operad().zero(dd.degree())?;
            Ok(vec![Defect::new("δ² = 0", dd, zero)])
        }),
        check!("cup_associativity_g3", Identities, 3, true, |c, x| {
            let l = c.cup(&c.cup(x[0], x[1])?, x[2])?;
            let r = c.cup(x[0], &c.cup(x[1], x[2])?)?;
            Ok(vec![Defect::new("(f⌣g)⌣h = f⌣(g⌣h)", l, r)])
        }),
    ]
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Also sweep every tuple of basis cochains.
    pub exhaustive: bool,
    pub memory_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub mu_squared_is_zero: bool,
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        crate::report::all_pass(&self.records)
    }
}

struct Runner<'a, P: PreOperad<Elem = Cochain>> {
    calc: &'a Calculus<P>,
    checks: Vec<Check<P>>,
    associative: bool,
}

impl<P: PreOperad<Elem = Cochain>> Runner<'_, P> {
    fn run(&self, tally: &mut Tally, arity: usize, args: &[&Cochain], seed: Option<u64>) -> Result<()> {
        let degrees: Vec<usize> = args.iter().map(|a| a.degree()).collect();
        for ch in self.checks.iter().filter(|c| c.arity == arity) {
            let outcome = if ch.needs_associativity && !self.associative {
                Outcome::NotApplicable("μ² ≠ 0".into())
            } else {
                Outcome::from_result((ch.run)(self.calc, args))?
            };
            tally.add(ch.name, &degrees, seed, outcome);
        }
        Ok(())
    }
}

fn basis(shape: ModuleShape, max_degree: usize, cap: usize) -> Result<Vec<Cochain>> {
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let count = shape.check_cap(n, cap)?;
        out.extend((0..count).map(|k| Cochain::basis(shape, n, k)));
    }
    Ok(out)
}

/// Runs the selected suites and returns one record per check and degree
/// profile, exhaustive records first.
pub fn run_verify<P: PreOperad<Elem = Cochain>>(
    calc: &Calculus<P>,
    name: &str,
    shape: ModuleShape,
    cfg: &VerifyConfig,
) -> Result<VerifyReport> {
    let runner = Runner {
        calc,
        checks: checks::<P>().into_iter().filter(|c| cfg.suites.contains(&c.suite)).collect(),
        associative: calc.operad().is_zero(calc.formal_associator()),
    };
    let mut records = Vec::new();

    if cfg.exhaustive {
        let mut tally = Tally::new(Mode::Exhaustive);
        let all = basis(shape, cfg.max_degree, cfg.memory_cap)?;
        for f in &all {
            runner.run(&mut tally, 1, &[f], None)?;
            for g in &all {
                runner.run(&mut tally, 2, &[f, g], None)?;
                for h in &all {
                    runner.run(&mut tally, 3, &[f, g, h], None)?;
                }
            }
        }
        records.extend(tally.into_records());
    }

    let mut tally = Tally::new(Mode::Random);
    for k in 0..cfg.samples {
        let sample_seed = cfg.seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
        let mut args = Vec::with_capacity(3);
        for _ in 0..3 {
            let degree = rng.gen_range(0..=cfg.max_degree);
            args.push(Cochain::random(shape, degree, rng.gen(), cfg.memory_cap)?);
        }
        let (f, g, h) = (&args[0], &args[1], &args[2]);
        runner.run(&mut tally, 1, &[f], Some(sample_seed))?;
        runner.run(&mut tally, 2, &[f, g], Some(sample_seed))?;
        runner.run(&mut tally, 3, &[f, g, h], Some(sample_seed))?;
    }
    records.extend(tally.into_records());

    Ok(VerifyReport {
        algebra: name.to_string(),
        field: shape.field.to_string(),
        max_degree: cfg.max_degree,
        samples: cfg.samples,
        seed: cfg.seed,
        mu_squared_is_zero: runner.associative,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{load_algebra, tests::DUAL, EndoOperad};
    use crate::report::Status;
    use crate::DEFAULT_MEMORY_CAP;

    #[test]
    fn check_names_are_unique() {
        let mut names: Vec<_> = checks::<EndoOperad>().iter().map(|c| c.name).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = load_algebra(DUAL, None).unwrap();
        let calc = Calculus::new(a.operad(), a.mu()).unwrap();
        let cfg = VerifyConfig {
            max_degree: 1,
            samples: 5,
            seed: 3,
            suites: vec![Suite::Axioms, Suite::Identities],
            exhaustive: true,
            memory_cap: DEFAULT_MEMORY_CAP,
        };
        let r = run_verify(&calc, &a.name, a.shape, &cfg).unwrap();
        assert!(r.passed());
        assert!(r.mu_squared_is_zero);
        assert!(r.records.iter().any(|x| x.mode == Mode::Exhaustive && x.status == Status::Pass));
        assert!(r.records.iter().any(|x| x.mode == Mode::Random));
        assert_eq!(r, run_verify(&calc, &a.name, a.shape, &cfg).unwrap());
    }
}
