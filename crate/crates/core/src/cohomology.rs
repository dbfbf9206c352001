//! The cohomology `H(C) = Ker δ / Im δ` of the endomorphism pre-operad of
//! an associative algebra, the induced cup product and bracket on it, and a
//! class-level certifier for the Gerstenhaber axioms (G1)–(G6).
//!
//! Classes are stored by their canonical representative: the coset-reduced
//! coordinate vector against the echelon basis of `Im D_{n−1}`. Two classes
//! are equal iff their representatives are equal.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::endo::{AlgebraSpec, Cochain, EndoOperad, ModuleShape};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::exactlinalg::{quotient_basis, ExactMatrix, Subspace};
use crate::opcalc::{Calculus, Defect, PreOperad};
use crate::oracle::{self, BarRanks};
use crate::report::{CheckRecord, Mode, Outcome, Status, Tally};
use crate::sign::Sign;

fn calculus(spec: &AlgebraSpec, cap: usize) -> Result<Calculus<EndoOperad>> {
    Calculus::new(spec.operad().with_memory_cap(cap), spec.mu())
}

fn matrix_of<P: PreOperad<Elem = Cochain>>(calc: &Calculus<P>, shape: ModuleShape, n: usize, cap: usize) -> Result<ExactMatrix> {
    shape.check_cap(n + 1, cap)?;
    let cols = shape.entries(n) as usize;
    let columns = (0..cols)
        .map(|k| calc.delta(&Cochain::basis(shape, n, k)).map(Cochain::into_data))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_columns(shape.field, shape.entries(n + 1) as usize, columns)
}

/// The matrix of `δ : C^n → C^{n+1}` in the standard cochain basis; column
/// `k` holds the coordinates of `δ` applied to the `k`-th basis cochain.
pub fn build_delta_matrix(spec: &AlgebraSpec, n: usize, cap: usize) -> Result<ExactMatrix> {
    matrix_of(&calculus(spec, cap)?, spec.shape, n, cap)
}

/// Human-readable description of the first nonzero coefficient of `μ²`.
pub fn associator_witness(spec: &AlgebraSpec, mu_sq: &Cochain) -> Option<String> {
    let flat = mu_sq.data().iter().position(|x| !x.is_zero())?;
    let (out, ins) = mu_sq.multi_index(flat);
    let b = |i: usize| spec.basis[i].as_str();
    Some(format!(
        "({a}·{b})·{c} − {a}·({b}·{c}) has coefficient {v} on {o}",
        a = b(ins[0]),
        b = b(ins[1]),
        c = b(ins[2]),
        v = mu_sq.data()[flat],
        o = b(out),
    ))
}

/// The matrices `D_0, …, D_N`.
#[derive(Debug, Clone)]
pub struct DeltaTower {
    pub matrices: Vec<ExactMatrix>,
    pub mu_squared_is_zero: bool,
}

impl DeltaTower {
    pub fn build(spec: &AlgebraSpec, max_degree: usize, cap: usize) -> Result<DeltaTower> {
        let calc = calculus(spec, cap)?;
        Self::from_calculus(&calc, spec.shape, max_degree, cap)
    }

    fn from_calculus<P: PreOperad<Elem = Cochain>>(
        calc: &Calculus<P>,
        shape: ModuleShape,
        max_degree: usize,
        cap: usize,
    ) -> Result<DeltaTower> {
        let matrices = (0..=max_degree).map(|n| matrix_of(calc, shape, n, cap)).collect::<Result<_>>()?;
        let mu_squared_is_zero = calc.operad().is_zero(calc.formal_associator());
        Ok(DeltaTower { matrices, mu_squared_is_zero })
    }

    /// The first `n` with `D_{n+1} D_n ≠ 0`.
    pub fn first_nonzero_square(&self) -> Result<Option<usize>> {
        for (n, w) in self.matrices.windows(2).enumerate() {
            if !w[1].mul(&w[0])?.is_zero() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// An element of `H^n` given by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Vec<Scalar>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.representative.iter().all(Scalar::is_zero)
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Sparse rendering `coef·[out; in…]` of the nonzero coefficients.
pub fn sparse_terms(c: &Cochain) -> Vec<String> {
    c.data()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(flat, x)| {
            let (out, ins) = c.multi_index(flat);
            format!("{x}·[{out}; {ins:?}]")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_h: usize,
    pub representatives: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignProbe {
    pub degree: usize,
    /// `ε` with `D_n = ε · β_n` for the classical coboundary `β_n`, if any.
    pub epsilon: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub center_dim: usize,
    pub derivation_dim: usize,
    pub inner_derivation_dim: usize,
    pub bar_complex: Vec<BarRanks>,
    pub sign_probe: Vec<SignProbe>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoboundaryWitness {
    pub check: String,
    /// `(degree, index)` of each basis class involved.
    pub classes: Vec<(usize, usize)>,
    pub degree: usize,
    /// Nonzero coefficients of `w`; empty means `w = 0`.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeStatus {
    Pass,
    Fail,
    InvalidPerturbation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeVerdict {
    pub seed: u64,
    pub classes: Vec<(usize, usize)>,
    pub status: ProbeStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GerstenhaberReport {
    pub verdicts: Vec<CheckRecord>,
    pub coboundary_witnesses: Vec<CoboundaryWitness>,
    pub probe: Vec<ProbeVerdict>,
    pub unit_class: Option<Vec<String>>,
}

impl GerstenhaberReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|r| r.status != Status::Fail)
            && self.probe.iter().all(|p| p.status == ProbeStatus::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    pub degrees: Vec<DegreeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracles: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gerstenhaber: Option<GerstenhaberReport>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|r| r.dim_h).collect()
    }
}

/// Cohomology of `E_A` in degrees `0..=N`, with lazily extended images for
/// the induced operations.
pub struct Cohomology {
    spec: AlgebraSpec,
    calc: Calculus<EndoOperad>,
    cap: usize,
    tower: DeltaTower,
    kernels: Vec<Subspace>,
    images: BTreeMap<usize, Subspace>,
    representatives: Vec<Vec<Vec<Scalar>>>,
}

/// Computes `H^0, …, H^N`. Refuses non-associative input.
pub fn compute_cohomology(spec: &AlgebraSpec, max_degree: usize, cap: usize) -> Result<Cohomology> {
    Cohomology::compute(spec, max_degree, cap)
}

impl Cohomology {
    pub fn compute(spec: &AlgebraSpec, max_degree: usize, cap: usize) -> Result<Cohomology> {
        let calc = calculus(spec, cap)?;
        if let Some(w) = associator_witness(spec, calc.formal_associator()) {
            return Err(Error::AssociativityRequired(w));
        }
        let tower = DeltaTower::from_calculus(&calc, spec.shape, max_degree, cap)?;
        if let Some(n) = tower.first_nonzero_square()? {
            return Err(Error::Contract(format!("D_{} D_{n} ≠ 0 although μ² = 0", n + 1)));
        }
        let field = spec.field();
        let mut kernels = Vec::new();
        let mut images = BTreeMap::new();
        let mut representatives = Vec::new();
        for n in 0..=max_degree {
            let ker = tower.matrices[n].kernel_basis();
            let im = if n == 0 {
                Subspace::zero(field, spec.shape.entries(0) as usize)
            } else {
                tower.matrices[n - 1].image_basis()
            };
            representatives.push(quotient_basis(&ker, &im)?);
            kernels.push(ker);
            images.insert(n, im);
        }
        Ok(Cohomology { spec: spec.clone(), calc, cap, tower, kernels, images, representatives })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn calculus(&self) -> &Calculus<EndoOperad> {
        &self.calc
    }

    pub fn tower(&self) -> &DeltaTower {
        &self.tower
    }

    pub fn max_degree(&self) -> usize {
        self.kernels.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.representatives.iter().map(Vec::len).collect()
    }

    fn shape(&self) -> ModuleShape {
        self.spec.shape
    }

    pub fn degree_records(&self) -> Vec<DegreeRecord> {
        (0..=self.max_degree())
            .map(|n| DegreeRecord {
                degree: n,
                dim_ker: self.kernels[n].dim(),
                dim_im: self.images[&n].dim(),
                dim_h: self.representatives[n].len(),
                representatives: self.representatives[n].iter().map(|v| strings(v)).collect(),
            })
            .collect()
    }

    pub fn report(&self) -> CohomologyReport {
        CohomologyReport {
            algebra: self.spec.name.clone(),
            field: self.spec.field().to_string(),
            max_degree: self.max_degree(),
            degrees: self.degree_records(),
            oracles: None,
            gerstenhaber: None,
        }
    }

    /// `Im D_{n−1} ⊆ C^n`, built on first use for degrees beyond `N`.
    pub fn image(&mut self, n: usize) -> Result<&Subspace> {
        if !self.images.contains_key(&n) {
            let m = matrix_of(&self.calc, self.shape(), n - 1, self.cap)?;
            self.images.insert(n, m.image_basis());
        }
        Ok(&self.images[&n])
    }

    /// The basis classes of `H^n`.
    pub fn basis_classes(&self, n: usize) -> Vec<CohomologyClass> {
        self.representatives
            .get(n)
            .map(|reps| {
                reps.iter()
                    .map(|r| CohomologyClass { degree: n, representative: r.clone() })
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn cochain(&self, class: &CohomologyClass) -> Result<Cochain> {
        Cochain::from_data(self.shape(), class.degree, class.representative.clone())
    }

    pub fn is_cocycle(&self, f: &Cochain) -> Result<bool> {
        Ok(self.calc.delta(f)?.is_zero())
    }

    pub fn is_coboundary(&mut self, f: &Cochain) -> Result<bool> {
        if f.degree() == 0 {
            return Ok(f.is_zero());
        }
        self.image(f.degree())?.contains(f.data())
    }

    /// The class of a cocycle.
    pub fn class_of(&mut self, f: &Cochain) -> Result<CohomologyClass> {
        if !self.is_cocycle(f)? {
            return Err(Error::Contract(format!("cochain of degree {} is not a cocycle", f.degree())));
        }
        self.reduce(f)
    }

    fn reduce(&mut self, f: &Cochain) -> Result<CohomologyClass> {
        let representative = if f.degree() == 0 {
            f.data().to_vec()
        } else {
            self.image(f.degree())?.coset_reduce(f.data())?
        };
        Ok(CohomologyClass { degree: f.degree(), representative })
    }

    fn check_rep(&self, a: &CohomologyClass) -> Result<Cochain> {
        let f = self.cochain(a)?;
        if !self.is_cocycle(&f)? {
            return Err(Error::Contract(format!("representative of degree {} is not a cocycle", a.degree)));
        }
        Ok(f)
    }

    pub fn induced_cup(&mut self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        let (f, g) = (self.check_rep(a)?, self.check_rep(b)?);
        let c = self.calc.cup(&f, &g)?;
        self.reduce(&c)
    }

    /// Fails with [`Error::NegativeDegree`] when both classes lie in `H^0`.
    pub fn induced_bracket(&mut self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        let (f, g) = (self.check_rep(a)?, self.check_rep(b)?);
        let c = self.calc.bracket(&f, &g)?;
        self.reduce(&c)
    }

    /// `δ` of a seeded random cochain of degree `n − 1`, or zero for `n = 0`.
    pub fn random_coboundary(&self, n: usize, seed: u64) -> Result<Cochain> {
        if n == 0 {
            return Ok(Cochain::zero(self.shape(), 0));
        }
        let r = self.calc.operad().random(n - 1, seed)?;
        self.calc.delta(&r)
    }

    /// Perturbs both representatives by seeded random coboundaries and
    /// compares the induced products with the unperturbed ones.
    pub fn well_definedness_probe(&mut self, a: &CohomologyClass, b: &CohomologyClass, seed: u64) -> Result<ProbeVerdict> {
        let pa = self.random_coboundary(a.degree, seed.wrapping_mul(2))?;
        let pb = self.random_coboundary(b.degree, seed.wrapping_mul(2).wrapping_add(1))?;
        self.probe_with(a, b, &pa, &pb, seed)
    }

    /// The probe with caller-supplied perturbations. A perturbation that is
    /// not a coboundary voids the probe rather than failing it.
    pub fn probe_with(
        &mut self,
        a: &CohomologyClass,
        b: &CohomologyClass,
        pa: &Cochain,
        pb: &Cochain,
        seed: u64,
    ) -> Result<ProbeVerdict> {
        let verdict = |status, detail: Option<String>| ProbeVerdict { seed, classes: vec![], status, detail };
        if pa.degree() != a.degree || pb.degree() != b.degree {
            return Err(Error::Degree("perturbation degree differs from class degree".into()));
        }
        for p in [pa, pb] {
            if !self.is_coboundary(p)? {
                return Ok(verdict(ProbeStatus::InvalidPerturbation, Some(format!("perturbation of degree {} is not a coboundary", p.degree()))));
            }
        }
        let f = self.check_rep(a)?.add(pa)?;
        let g = self.check_rep(b)?.add(pb)?;
        let cup = self.calc.cup(&f, &g)?;
        if self.reduce(&cup)? != self.induced_cup(a, b)? {
            return Ok(verdict(ProbeStatus::Fail, Some("induced cup depends on the representative".into())));
        }
        match self.calc.bracket(&f, &g) {
            Ok(br) => {
                if self.reduce(&br)? != self.induced_bracket(a, b)? {
                    return Ok(verdict(ProbeStatus::Fail, Some("induced bracket depends on the representative".into())));
                }
            }
            Err(Error::NegativeDegree(_)) => {}
            Err(e) => return Err(e),
        }
        Ok(verdict(ProbeStatus::Pass, None))
    }

    fn all_basis_classes(&self) -> Vec<((usize, usize), CohomologyClass)> {
        (0..=self.max_degree())
            .flat_map(|n| self.basis_classes(n).into_iter().enumerate().map(move |(i, c)| ((n, i), c)))
            .collect()
    }

    /// A class `u ∈ H^0` with `u ⌣ x = x = x ⌣ u` for every basis class `x`
    /// of degree at most `N`, found by a linear solve.
    pub fn unit_class(&mut self) -> Result<Option<CohomologyClass>> {
        let h0 = self.basis_classes(0);
        let targets = self.all_basis_classes();
        let field = self.spec.field();
        let mut columns: Vec<Vec<Scalar>> = vec![Vec::new(); h0.len()];
        let mut rhs = Vec::new();
        for (_, x) in &targets {
            for (q, w) in h0.iter().enumerate() {
                let l = self.induced_cup(w, x)?;
                let r = self.induced_cup(x, w)?;
                columns[q].extend(l.representative);
                columns[q].extend(r.representative);
            }
            rhs.extend(x.representative.iter().cloned());
            rhs.extend(x.representative.iter().cloned());
        }
        let m = ExactMatrix::from_columns(field, rhs.len(), columns)?;
        let Some(coef) = m.solve(&rhs)? else { return Ok(None) };
        let mut u = vec![field.zero(); self.shape().entries(0) as usize];
        for (c, w) in coef.iter().zip(&h0) {
            for (ui, wi) in u.iter_mut().zip(&w.representative) {
                ui.add_product(c, wi);
            }
        }
        Ok(Some(CohomologyClass { degree: 0, representative: u }))
    }

    /// Cross-checks against the independent oracles.
    pub fn oracle_report(&self) -> Result<OracleReport> {
        let spec = &self.spec;
        let center = oracle::center(spec).dim();
        let der = oracle::derivations(spec).dim();
        let inner = oracle::inner_derivations(spec)?.dim();
        let n = self.max_degree();
        let bar = oracle::bar_complex_ranks(spec, n);
        let sign_probe = (0..=n)
            .map(|k| SignProbe {
                degree: k,
                epsilon: oracle::sign_relation(&self.tower.matrices[k], &oracle::hochschild_matrix(spec, k)),
            })
            .collect();
        let dims = self.dims();
        let mut tally = Tally::new(Mode::Exhaustive);
        let eq = |name: &str, degree: usize, ours: usize, theirs: usize| {
            if ours == theirs {
                Outcome::Pass
            } else {
                Outcome::Fail(crate::opcalc::Witness {
                    identity: name.to_string(),
                    degree,
                    output: 0,
                    inputs: vec![],
                    lhs: ours.to_string(),
                    rhs: theirs.to_string(),
                })
            }
        };
        tally.add("h0_equals_center", &[0], None, eq("dim H^0 = dim Z(A)", 0, dims[0], center));
        if n >= 1 {
            tally.add("h1_equals_outer_derivations", &[1], None, eq("dim H^1 = dim Der/InnDer", 1, dims[1], der - inner));
        }
        for b in &bar {
            let k = b.degree;
            tally.add("bar_complex_kernel", &[k], None, eq("dim Ker", k, self.kernels[k].dim(), b.dim_ker));
            tally.add("bar_complex_rank", &[k], None, eq("rank", k, self.tower.matrices[k].rank(), b.rank));
            tally.add("bar_complex_cohomology", &[k], None, eq("dim H", k, dims[k], b.dim_h));
        }
        Ok(OracleReport {
            center_dim: center,
            derivation_dim: der,
            inner_derivation_dim: inner,
            bar_complex: bar,
            sign_probe,
            checks: tally.into_records(),
        })
    }

    /// Certifies (G1)–(G6) on every pair and triple of basis classes, with
    /// cochain-level coboundary witnesses for (G4) and (G5), the
    /// well-definedness probe for `probe_seeds` seeds, and the unit class.
    pub fn gerstenhaber_suite(&mut self, probe_seeds: u64) -> Result<GerstenhaberReport> {
        let classes = self.all_basis_classes();
        let mut tally = Tally::new(Mode::Classes);
        let mut witnesses = Vec::new();

        for (ia, a) in &classes {
            for (ib, b) in &classes {
                let degs = [a.degree, b.degree];
                let out = self.g1(a, b)?;
                tally.add("G1 antisymmetry", &degs, None, out);
                let out = self.g4(a, b)?;
                tally.add("G4 graded commutativity", &degs, None, out);
                let out = self.g6(a, b)?;
                tally.add("G6 degrees", &degs, None, out);
                let (out, w) = self.g4_witness(a, b)?;
                tally.add("G4 coboundary witness", &degs, None, out);
                if let Some(w) = w {
                    witnesses.push(CoboundaryWitness { check: "G4".into(), classes: vec![*ia, *ib], degree: w.degree(), witness: sparse_terms(&w) });
                }
            }
        }
        for (ia, a) in &classes {
            for (ib, b) in &classes {
                for (ic, c) in &classes {
                    let degs = [a.degree, b.degree, c.degree];
                    let out = self.g2(a, b, c)?;
                    tally.add("G2 Jacobi", &degs, None, out);
                    let out = self.g3(a, b, c)?;
                    tally.add("G3 associativity", &degs, None, out);
                    let out = self.g5(a, b, c)?;
                    tally.add("G5 Leibniz", &degs, None, out);
                    let (out, w) = self.g5_witness(a, b, c)?;
                    tally.add("G5 coboundary witness", &degs, None, out);
                    if let Some(w) = w {
                        witnesses.push(CoboundaryWitness {
                            check: "G5".into(),
                            classes: vec![*ia, *ib, *ic],
                            degree: w.degree(),
                            witness: sparse_terms(&w),
                        });
                    }
                }
            }
        }

        let mut probe = Vec::new();
        if !classes.is_empty() {
            for seed in 0..probe_seeds {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (ia, a) = classes[rng.gen_range(0..classes.len())].clone();
                let (ib, b) = classes[rng.gen_range(0..classes.len())].clone();
                let mut v = self.well_definedness_probe(&a, &b, seed)?;
                v.classes = vec![ia, ib];
                probe.push(v);
            }
        }
        let unit_class = self.unit_class()?.map(|u| strings(&u.representative));
        Ok(GerstenhaberReport { verdicts: tally.into_records(), coboundary_witnesses: witnesses, probe, unit_class })
    }

    // ---- class-level checks; a term in C^{−1} counts as zero -----------------

    fn opt(&self, r: Result<Cochain>) -> Result<Option<Cochain>> {
        match r {
            Ok(c) => Ok(Some(c)),
            Err(Error::NegativeDegree(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn cup_opt(&self, f: Option<&Cochain>, g: Option<&Cochain>) -> Result<Option<Cochain>> {
        match (f, g) {
            (Some(f), Some(g)) => Ok(Some(self.calc.cup(f, g)?)),
            _ => Ok(None),
        }
    }

    fn bracket_opt(&self, f: Option<&Cochain>, g: Option<&Cochain>) -> Result<Option<Cochain>> {
        match (f, g) {
            (Some(f), Some(g)) => self.opt(self.calc.bracket(f, g)),
            _ => Ok(None),
        }
    }

    /// `Σ sign · term` in the given degree, skipping zero (`None`) terms.
    fn sum(&self, degree: i64, terms: &[(Sign, &Option<Cochain>)]) -> Result<Option<Cochain>> {
        let Ok(degree) = usize::try_from(degree) else { return Ok(None) };
        let mut acc = Cochain::zero(self.shape(), degree);
        for (s, t) in terms {
            if let Some(t) = t {
                acc.accumulate(*s, t)?;
            }
        }
        Ok(Some(acc))
    }

    /// Compares two sides as classes.
    fn compare(&mut self, identity: &'static str, lhs: Option<Cochain>, rhs: Option<Cochain>) -> Result<Outcome> {
        match (lhs, rhs) {
            (Some(l), Some(r)) => {
                let (l, r) = (self.reduce(&l)?, self.reduce(&r)?);
                let d = Defect::new(identity, self.cochain(&l)?, self.cochain(&r)?);
                Ok(Outcome::from_defects(&[d]))
            }
            _ => Ok(Outcome::NotApplicable("both sides lie in H^{-1} = 0".into())),
        }
    }

    fn reps(&self, xs: &[&CohomologyClass]) -> Result<Vec<Cochain>> {
        xs.iter().map(|x| self.check_rep(x)).collect()
    }

    fn g1(&mut self, a: &CohomologyClass, b: &CohomologyClass) -> Result<Outcome> {
        let r = self.reps(&[a, b])?;
        let (fr, gr) = (r[0].reduced_degree(), r[1].reduced_degree());
        let lhs = self.opt(self.calc.bracket(&r[0], &r[1]))?;
        let ba = self.opt(self.calc.bracket(&r[1], &r[0]))?;
        let rhs = self.sum(fr + gr + 1, &[(-Sign::pow(fr * gr), &ba)])?;
        self.compare("G1 [a,b] = −(−1)^{|a||b|}[b,a]", lhs, rhs)
    }

    fn g4(&mut self, a: &CohomologyClass, b: &CohomologyClass) -> Result<Outcome> {
        let r = self.reps(&[a, b])?;
        let lhs = Some(self.calc.cup(&r[0], &r[1])?);
        let ba = Some(self.calc.cup(&r[1], &r[0])?);
        let rhs = self.sum((a.degree + b.degree) as i64, &[(Sign::pow((a.degree * b.degree) as i64), &ba)])?;
        self.compare("G4 a⌣b = (−1)^{ab} b⌣a", lhs, rhs)
    }

    fn g6(&mut self, a: &CohomologyClass, b: &CohomologyClass) -> Result<Outcome> {
        let r = self.reps(&[a, b])?;
        let cup = self.calc.cup(&r[0], &r[1])?;
        let bad = |what: &str, got: i64, want: i64| {
            Outcome::Fail(crate::opcalc::Witness {
                identity: format!("G6 {what}"),
                degree: a.degree + b.degree,
                output: 0,
                inputs: vec![],
                lhs: got.to_string(),
                rhs: want.to_string(),
            })
        };
        if cup.degree() != a.degree + b.degree {
            return Ok(bad("deg(a⌣b) = deg a + deg b", cup.degree() as i64, (a.degree + b.degree) as i64));
        }
        let want = r[0].reduced_degree() + r[1].reduced_degree();
        match self.calc.bracket(&r[0], &r[1]) {
            Ok(br) if br.reduced_degree() != want => Ok(bad("|[a,b]| = |a| + |b|", br.reduced_degree(), want)),
            Ok(_) | Err(Error::NegativeDegree(_)) => Ok(Outcome::Pass),
            Err(e) => Err(e),
        }
    }

    fn g2(&mut self, a: &CohomologyClass, b: &CohomologyClass, c: &CohomologyClass) -> Result<Outcome> {
        let r = self.reps(&[a, b, c])?;
        let (fr, gr, hr) = (r[0].reduced_degree(), r[1].reduced_degree(), r[2].reduced_degree());
        let fg = self.bracket_opt(Some(&r[0]), Some(&r[1]))?;
        let gh = self.bracket_opt(Some(&r[1]), Some(&r[2]))?;
        let hf = self.bracket_opt(Some(&r[2]), Some(&r[0]))?;
        let x = self.bracket_opt(fg.as_ref(), Some(&r[2]))?;
        let y = self.bracket_opt(gh.as_ref(), Some(&r[0]))?;
        let z = self.bracket_opt(hf.as_ref(), Some(&r[1]))?;
        let degree = fr + gr + hr + 1;
        let lhs = self.sum(degree, &[(Sign::pow(fr * hr), &x), (Sign::pow(gr * fr), &y), (Sign::pow(hr * gr), &z)])?;
        let rhs = self.sum(degree, &[])?;
        self.compare("G2 Jacobi", lhs, rhs)
    }

    fn g3(&mut self, a: &CohomologyClass, b: &CohomologyClass, c: &CohomologyClass) -> Result<Outcome> {
        let ab = self.induced_cup(a, b)?;
        let bc = self.induced_cup(b, c)?;
        let lhs = self.induced_cup(&ab, c)?;
        let rhs = self.induced_cup(a, &bc)?;
        let d = Defect::new("G3 (a⌣b)⌣c = a⌣(b⌣c)", self.cochain(&lhs)?, self.cochain(&rhs)?);
        Ok(Outcome::from_defects(&[d]))
    }

    /// `[h, f⌣g]` and `[h,f]⌣g + (−1)^{|h|f} f⌣[h,g]`.
    fn leibniz_sides(&self, r: &[Cochain]) -> Result<(Option<Cochain>, Option<Cochain>)> {
        let (h, f, g) = (&r[0], &r[1], &r[2]);
        let fg = self.calc.cup(f, g)?;
        let lhs = self.bracket_opt(Some(h), Some(&fg))?;
        let hf = self.bracket_opt(Some(h), Some(f))?;
        let hg = self.bracket_opt(Some(h), Some(g))?;
        let x = self.cup_opt(hf.as_ref(), Some(g))?;
        let y = self.cup_opt(Some(f), hg.as_ref())?;
        let degree = h.reduced_degree() + f.degree() as i64 + g.degree() as i64;
        let s = Sign::pow(h.reduced_degree() * f.degree() as i64);
        let rhs = self.sum(degree, &[(Sign::Plus, &x), (s, &y)])?;
        Ok((lhs, rhs))
    }

    fn g5(&mut self, h: &CohomologyClass, f: &CohomologyClass, g: &CohomologyClass) -> Result<Outcome> {
        let r = self.reps(&[h, f, g])?;
        let (lhs, rhs) = self.leibniz_sides(&r)?;
        self.compare("G5 [h,f⌣g] = [h,f]⌣g + (−1)^{|h|f} f⌣[h,g]", lhs, rhs)
    }

    /// `w = (−1)^{|g|} f•g` with `δw = f⌣g − (−1)^{fg} g⌣f` exactly.
    fn g4_witness(&mut self, a: &CohomologyClass, b: &CohomologyClass) -> Result<(Outcome, Option<Cochain>)> {
        let r = self.reps(&[a, b])?;
        let diff = self.calc.graded_cup_commutator(&r[0], &r[1])?;
        let w = match self.calc.total(&r[0], &r[1]) {
            Ok(t) => t.signed(Sign::pow(r[1].reduced_degree())),
            Err(Error::NegativeDegree(_)) => {
                let d = Defect::new("G4 witness: difference in C^0 with zero witness", diff.clone(), Cochain::zero(self.shape(), diff.degree()));
                return Ok((Outcome::from_defects(&[d]), None));
            }
            Err(e) => return Err(e),
        };
        let d = Defect::new("G4 witness: δ((−1)^{|g|} f•g) = f⌣g − (−1)^{fg} g⌣f", self.calc.delta(&w)?, diff);
        Ok((Outcome::from_defects(&[d]), Some(w)))
    }

    /// `w = −(−1)^{|g|} {h,f,g}` with `δw = [h,f⌣g] − [h,f]⌣g − (−1)^{|h|f} f⌣[h,g]`.
    fn g5_witness(&mut self, h: &CohomologyClass, f: &CohomologyClass, g: &CohomologyClass) -> Result<(Outcome, Option<Cochain>)> {
        let r = self.reps(&[h, f, g])?;
        let (lhs, rhs) = self.leibniz_sides(&r)?;
        let Some(lhs) = lhs else {
            return Ok((Outcome::NotApplicable("both sides lie in C^{-1} = 0".into()), None));
        };
        let rhs = rhs.unwrap_or_else(|| Cochain::zero(self.shape(), lhs.degree()));
        let diff = lhs.sub(&rhs)?;
        let w = match self.calc.tribrace(&r[0], &r[1], &r[2]) {
            Ok(t) => Some(t.signed(-Sign::pow(r[2].reduced_degree()))),
            Err(Error::NegativeDegree(_)) => None,
            Err(e) => return Err(e),
        };
        let dw = match &w {
            Some(w) => self.calc.delta(w)?,
            None => Cochain::zero(self.shape(), diff.degree()),
        };
        let d = Defect::new("G5 witness: δ(−(−1)^{|g|}{h,f,g}) = Leibniz difference", dw, diff);
        Ok((Outcome::from_defects(&[d]), w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{load_algebra, tests::DUAL};
    use crate::DEFAULT_MEMORY_CAP;

    #[test]
    fn delta_matrix_shape() {
        let a = load_algebra(DUAL, None).unwrap();
        let m = build_delta_matrix(&a, 0, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert!(matches!(build_delta_matrix(&a, 5, 64), Err(Error::Resource { .. })));
    }

    #[test]
    fn sparse_rendering() {
        let a = load_algebra(DUAL, None).unwrap();
        assert_eq!(sparse_terms(&a.mu()), vec!["1·[0; [0, 0]]", "1·[1; [0, 1]]", "1·[1; [1, 0]]"]);
        assert!(associator_witness(&a, &Cochain::zero(a.shape, 3)).is_none());
    }

    #[test]
    fn report_dimensions() {
        let a = load_algebra(DUAL, None).unwrap();
        let h = compute_cohomology(&a, 2, DEFAULT_MEMORY_CAP).unwrap();
        let r = h.report();
        assert_eq!(r.dims(), vec![2, 1, 1]);
        assert_eq!(r.degrees[0].representatives, vec![vec!["1", "0"], vec!["0", "1"]]);
    }
}
