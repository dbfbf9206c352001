//! Operations derived from a pre-operad and a fixed `μ ∈ C^2`, and the
//! identities relating them.
//!
//! Everything here is written against [`PreOperad`], which exposes only the
//! graded components, partial compositions, the unit and the linear
//! structure. Degrees follow the usual convention: `deg f = n` for
//! `f ∈ C^n` and `|f| = n − 1`.
//!
//! Sums over an empty slot range are zero. In particular `f • g = 0` when
//! `deg f = 0`. A result that would land in negative degree is reported as
//! [`Error::NegativeDegree`].

use std::fmt;

use crate::endo::Cochain;
use crate::error::{Error, Result};
use crate::sign::Sign;

/// A linear pre-operad: graded components with partial compositions
/// `∘_i : C^m ⊗ C^n → C^{m+n−1}` for `0 ≤ i ≤ m − 1` and a unit in `C^1`.
pub trait PreOperad {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn degree(&self, f: &Self::Elem) -> usize;

    fn zero(&self, degree: usize) -> Result<Self::Elem>;

    fn unit(&self) -> Self::Elem;

    /// `acc += sign · (f ∘_i g)`.
    fn compose_into(
        &self,
        acc: &mut Self::Elem,
        sign: Sign,
        f: &Self::Elem,
        i: usize,
        g: &Self::Elem,
    ) -> Result<()>;

    /// `acc += sign · g`.
    fn accumulate(&self, acc: &mut Self::Elem, sign: Sign, g: &Self::Elem) -> Result<()>;

    fn is_zero(&self, f: &Self::Elem) -> bool;

    fn reduced_degree(&self, f: &Self::Elem) -> i64 {
        self.degree(f) as i64 - 1
    }

    fn compose(&self, f: &Self::Elem, i: usize, g: &Self::Elem) -> Result<Self::Elem> {
        let m = self.degree(f);
        if i >= m {
            return Err(Error::Position { slot: i, degree: m });
        }
        let mut acc = self.zero(m + self.degree(g) - 1)?;
        self.compose_into(&mut acc, Sign::Plus, f, i, g)?;
        Ok(acc)
    }
}

fn nonneg(degree: i64) -> Result<usize> {
    usize::try_from(degree).map_err(|_| Error::NegativeDegree(degree))
}

/// Left side and right side of an identity; the identity holds iff they
/// are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Defect<E> {
    pub identity: &'static str,
    pub lhs: E,
    pub rhs: E,
}

impl<E: PartialEq> Defect<E> {
    pub fn new(identity: &'static str, lhs: E, rhs: E) -> Self {
        Defect { identity, lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The first coefficient at which the two sides of an identity disagree.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub identity: String,
    pub degree: usize,
    pub output: usize,
    pub inputs: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: coefficient [out {}; in {:?}] lhs = {}, rhs = {}",
            self.identity, self.output, self.inputs, self.lhs, self.rhs
        )
    }
}

impl Defect<Cochain> {
    /// `lhs − rhs`.
    pub fn difference(&self) -> Result<Cochain> {
        self.lhs.sub(&self.rhs)
    }

    pub fn witness(&self) -> Option<Witness> {
        let flat = self.lhs.first_difference(&self.rhs)?;
        if self.lhs.degree() != self.rhs.degree() {
            return Some(Witness {
                identity: self.identity.to_string(),
                degree: self.lhs.degree(),
                output: 0,
                inputs: vec![],
                lhs: format!("degree {}", self.lhs.degree()),
                rhs: format!("degree {}", self.rhs.degree()),
            });
        }
        let (output, inputs) = self.lhs.multi_index(flat);
        Some(Witness {
            identity: self.identity.to_string(),
            degree: self.lhs.degree(),
            output,
            inputs,
            lhs: self.lhs.data()[flat].to_string(),
            rhs: self.rhs.data()[flat].to_string(),
        })
    }
}

/// A pre-operad together with the fixed element `μ ∈ C^2`.
pub struct Calculus<P: PreOperad> {
    operad: P,
    mu: P::Elem,
    mu_sq: P::Elem,
    #[cfg(feature = "fault-injection")]
    dropped_delta_term: Option<usize>,
}

impl<P: PreOperad> Calculus<P> {
    pub fn new(operad: P, mu: P::Elem) -> Result<Self> {
        if operad.degree(&mu) != 2 {
            return Err(Error::Degree(format!("μ must have degree 2, got {}", operad.degree(&mu))));
        }
        let mut mu_sq = operad.zero(3)?;
        for i in 0..2 {
            operad.compose_into(&mut mu_sq, Sign::Plus, &mu, i, &mu)?;
        }
        Ok(Calculus {
            operad,
            mu,
            mu_sq,
            #[cfg(feature = "fault-injection")]
            dropped_delta_term: None,
        })
    }

    /// Makes [`Calculus::delta`] silently omit one of its terms. Term `0`
    /// and `1` are `μ ∘_0 f` and `μ ∘_1 f`; term `2 + i` is `f ∘_i μ`.
    #[cfg(feature = "fault-injection")]
    pub fn with_dropped_delta_term(mut self, term: usize) -> Self {
        self.dropped_delta_term = Some(term);
        self
    }

    #[cfg(feature = "fault-injection")]
    fn keeps_delta_term(&self, term: usize) -> bool {
        self.dropped_delta_term != Some(term)
    }

    #[cfg(not(feature = "fault-injection"))]
    fn keeps_delta_term(&self, _term: usize) -> bool {
        true
    }

    pub fn operad(&self) -> &P {
        &self.operad
    }

    pub fn mu(&self) -> &P::Elem {
        &self.mu
    }

    /// `μ² = μ • μ`.
    pub fn formal_associator(&self) -> &P::Elem {
        &self.mu_sq
    }

    pub fn unit(&self) -> P::Elem {
        self.operad.unit()
    }

    fn deg(&self, f: &P::Elem) -> i64 {
        self.operad.degree(f) as i64
    }

    fn red(&self, f: &P::Elem) -> i64 {
        self.operad.reduced_degree(f)
    }

    /// `Σ sign · term`, all terms of the given degree.
    pub fn combine(&self, degree: usize, terms: &[(Sign, &P::Elem)]) -> Result<P::Elem> {
        let mut acc = self.operad.zero(degree)?;
        for (s, t) in terms {
            self.operad.accumulate(&mut acc, *s, t)?;
        }
        Ok(acc)
    }

    fn scaled(&self, sign: Sign, f: &P::Elem) -> Result<P::Elem> {
        self.combine(self.operad.degree(f), &[(sign, f)])
    }

    pub fn compose(&self, f: &P::Elem, i: usize, g: &P::Elem) -> Result<P::Elem> {
        self.operad.compose(f, i, g)
    }

    /// `f ⌣ g = (−1)^f (μ ∘_0 f) ∘_f g`, of degree `f + g`.
    pub fn cup(&self, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let left = self.operad.compose(&self.mu, 0, f)?;
        let fd = self.operad.degree(f);
        let mut acc = self.operad.zero(fd + self.operad.degree(g))?;
        self.operad.compose_into(&mut acc, Sign::pow(fd as i64), &left, fd, g)?;
        Ok(acc)
    }

    fn total_into(&self, acc: &mut P::Elem, sign: Sign, f: &P::Elem, g: &P::Elem) -> Result<()> {
        for i in 0..self.operad.degree(f) {
            self.operad.compose_into(acc, sign, f, i, g)?;
        }
        Ok(())
    }

    /// `f • g = Σ_{i=0}^{|f|} f ∘_i g`, of degree `f + |g|`.
    pub fn total(&self, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let mut acc = self.operad.zero(nonneg(self.deg(f) + self.red(g))?)?;
        self.total_into(&mut acc, Sign::Plus, f, g)?;
        Ok(acc)
    }

    /// `{h, f, g} = Σ_{i=0}^{|h|−1} Σ_{j=i+f}^{|f|+|h|} (h ∘_i f) ∘_j g`.
    pub fn tribrace(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let (hd, fd) = (self.deg(h), self.deg(f));
        let mut acc = self.operad.zero(nonneg(hd + self.red(f) + self.red(g))?)?;
        for i in 0..(hd - 1).max(0) {
            let hf = self.operad.compose(h, i as usize, f)?;
            for j in (i + fd)..=(fd + hd - 2) {
                self.operad.compose_into(&mut acc, Sign::Plus, &hf, j as usize, g)?;
            }
        }
        Ok(acc)
    }

    /// `{h, f, g, b} = Σ_i Σ_j Σ_k ((h ∘_i f) ∘_j g) ∘_k b` with
    /// `i ∈ [0, |h|−2]`, `j ∈ [i+f, |h|+|f|−1]`, `k ∈ [j+g, |h|+|f|+|g|]`.
    pub fn tetrabrace(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem, b: &P::Elem) -> Result<P::Elem> {
        let (hd, fd, gd) = (self.deg(h), self.deg(f), self.deg(g));
        let (hr, fr, gr) = (hd - 1, fd - 1, gd - 1);
        let mut acc = self.operad.zero(nonneg(hd + fr + gr + self.red(b))?)?;
        for i in 0..=(hr - 2) {
            let hf = self.operad.compose(h, i as usize, f)?;
            for j in (i + fd)..=(hr + fr - 1) {
                let hfg = self.operad.compose(&hf, j as usize, g)?;
                for k in (j + gd)..=(hr + fr + gr) {
                    self.operad.compose_into(&mut acc, Sign::Plus, &hfg, k as usize, b)?;
                }
            }
        }
        Ok(acc)
    }

    /// `[f, g] = f • g − (−1)^{|f||g|} g • f`.
    pub fn bracket(&self, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let mut acc = self.operad.zero(nonneg(self.deg(f) + self.red(g))?)?;
        self.total_into(&mut acc, Sign::Plus, f, g)?;
        self.total_into(&mut acc, -Sign::pow(self.red(f) * self.red(g)), g, f)?;
        Ok(acc)
    }

    /// The pre-coboundary `δf = (−1)^{|f|} μ • f − f • μ`, of degree `f + 1`.
    pub fn delta(&self, f: &P::Elem) -> Result<P::Elem> {
        let fd = self.operad.degree(f);
        let mut acc = self.operad.zero(fd + 1)?;
        let left = Sign::pow(self.red(f));
        for k in 0..2 {
            if self.keeps_delta_term(k) {
                self.operad.compose_into(&mut acc, left, &self.mu, k, f)?;
            }
        }
        for i in 0..fd {
            if self.keeps_delta_term(2 + i) {
                self.operad.compose_into(&mut acc, Sign::Minus, f, i, &self.mu)?;
            }
        }
        Ok(acc)
    }

    /// `δ_ν f := −[f, ν]`, so that `δ = δ_μ`.
    pub fn delta_with(&self, nu: &P::Elem, f: &P::Elem) -> Result<P::Elem> {
        let b = self.bracket(f, nu)?;
        self.scaled(Sign::Minus, &b)
    }

    // ---- identities -------------------------------------------------------

    /// The three cases of the composition relations for every admissible
    /// `(i, j)`, plus the derived swapped instance for each first-case one.
    pub fn composition_relations(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<Vec<Defect<P::Elem>>> {
        let op = &self.operad;
        let (hd, fd) = (self.deg(h), self.deg(f));
        let (hr, fr, gr) = (hd - 1, fd - 1, self.red(g));
        let eps = Sign::pow(fr * gr);
        let mut out = Vec::new();
        if hd == 0 || hd + fr < 1 {
            return Ok(out);
        }
        for i in 0..=hr {
            let hf = op.compose(h, i as usize, f)?;
            for j in 0..=(hr + fr) {
                let lhs = op.compose(&hf, j as usize, g)?;
                if j < i {
                    let hg = op.compose(h, j as usize, g)?;
                    let rhs = self.scaled(eps, &op.compose(&hg, (i + gr) as usize, f)?)?;
                    // The same equality read as a third-case instance of (h, g, f).
                    let swapped = self.composition_case3(h, g, f, j, i + gr)?;
                    out.push(Defect::new("composition swap (lhs)", swapped.lhs, self.scaled(eps, &rhs)?));
                    out.push(Defect::new("composition swap (rhs)", swapped.rhs, self.scaled(eps, &lhs)?));
                    out.push(Defect::new("composition case 1", lhs, rhs));
                } else if j <= i + fr {
                    let fg = op.compose(f, (j - i) as usize, g)?;
                    let rhs = op.compose(h, i as usize, &fg)?;
                    out.push(Defect::new("composition case 2", lhs, rhs));
                } else {
                    debug_assert!(j >= i + fd && j <= hr + fr);
                    drop(lhs);
                    out.push(self.composition_case3(h, f, g, i, j)?);
                }
            }
        }
        Ok(out)
    }

    fn composition_case3(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem, i: i64, j: i64) -> Result<Defect<P::Elem>> {
        let op = &self.operad;
        let (fr, gr) = (self.red(f), self.red(g));
        if !(j >= i + fr + 1 && j <= self.red(h) + fr) {
            return Err(Error::Contract(format!("({i}, {j}) is not a third-case index pair")));
        }
        let lhs = op.compose(&op.compose(h, i as usize, f)?, j as usize, g)?;
        let hg = op.compose(h, (j - fr) as usize, g)?;
        let rhs = self.scaled(Sign::pow(fr * gr), &op.compose(&hg, i as usize, f)?)?;
        Ok(Defect::new("composition case 3", lhs, rhs))
    }

    /// `1 ∘_0 f = f` and `f ∘_i 1 = f` for `0 ≤ i ≤ |f|`.
    pub fn unit_laws(&self, f: &P::Elem) -> Result<Vec<Defect<P::Elem>>> {
        let one = self.unit();
        let mut out = vec![Defect::new("unit left", self.operad.compose(&one, 0, f)?, f.clone())];
        for i in 0..self.operad.degree(f) {
            out.push(Defect::new("unit right", self.operad.compose(f, i, &one)?, f.clone()));
        }
        Ok(out)
    }

    /// `f ⌣ g = (−1)^f {μ, f, g}`.
    pub fn cup_tribrace(&self, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let rhs = self.scaled(Sign::pow(self.deg(f)), &self.tribrace(&self.mu, f, g)?)?;
        Ok(Defect::new("cup as tribrace", self.cup(f, g)?, rhs))
    }

    /// `(h•f)•g − h•(f•g)`.
    pub fn total_associator(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let left = self.total(&self.total(h, f)?, g)?;
        let right = self.total(h, &self.total(f, g)?)?;
        self.combine(self.operad.degree(&left), &[(Sign::Plus, &left), (Sign::Minus, &right)])
    }

    /// `(h, f, g) = {h, f, g} + (−1)^{|f||g|} {h, g, f}`.
    pub fn getzler(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.total_associator(h, f, g)?;
        let a = self.tribrace(h, f, g)?;
        let b = self.tribrace(h, g, f)?;
        let rhs = self.combine(self.operad.degree(&lhs), &[(Sign::Plus, &a), (Sign::pow(self.red(f) * self.red(g)), &b)])?;
        Ok(Defect::new("Getzler identity", lhs, rhs))
    }

    /// `(h, f, g) = (−1)^{|f||g|} (h, g, f)`.
    pub fn gerstenhaber(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.total_associator(h, f, g)?;
        let rhs = self.scaled(Sign::pow(self.red(f) * self.red(g)), &self.total_associator(h, g, f)?)?;
        Ok(Defect::new("Gerstenhaber identity", lhs, rhs))
    }

    /// `[f, g] = −(−1)^{|f||g|} [g, f]`.
    pub fn antisymmetry(&self, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let rhs = self.scaled(-Sign::pow(self.red(f) * self.red(g)), &self.bracket(g, f)?)?;
        Ok(Defect::new("bracket antisymmetry (G1)", self.bracket(f, g)?, rhs))
    }

    /// `(−1)^{|f||h|}[[f,g],h] + (−1)^{|g||f|}[[g,h],f] + (−1)^{|h||g|}[[h,f],g] = 0`.
    pub fn jacobi(&self, f: &P::Elem, g: &P::Elem, h: &P::Elem) -> Result<Defect<P::Elem>> {
        let (fr, gr, hr) = (self.red(f), self.red(g), self.red(h));
        let a = self.bracket(&self.bracket(f, g)?, h)?;
        let b = self.bracket(&self.bracket(g, h)?, f)?;
        let c = self.bracket(&self.bracket(h, f)?, g)?;
        let degree = self.operad.degree(&a);
        let lhs = self.combine(degree, &[(Sign::pow(fr * hr), &a), (Sign::pow(gr * fr), &b), (Sign::pow(hr * gr), &c)])?;
        Ok(Defect::new("Jacobi identity (G2)", lhs, self.operad.zero(degree)?))
    }

    /// `δf = −[f, μ]`, comparing the direct expansion of `δ` with the bracket.
    pub fn delta_as_bracket(&self, f: &P::Elem) -> Result<Defect<P::Elem>> {
        Ok(Defect::new("δ as right adjoint", self.delta(f)?, self.delta_with(&self.mu, f)?))
    }

    /// `δ[f, g] = (−1)^{|g|} [δf, g] + [f, δg]`.
    pub fn delta_bracket_derivation(&self, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.delta(&self.bracket(f, g)?)?;
        let a = self.bracket(&self.delta(f)?, g)?;
        let b = self.bracket(f, &self.delta(g)?)?;
        let rhs = self.combine(self.operad.degree(&lhs), &[(Sign::pow(self.red(g)), &a), (Sign::Plus, &b)])?;
        Ok(Defect::new("δ derivation of bracket", lhs, rhs))
    }

    /// `δ²f = −δ_{μ²} f`.
    pub fn delta_squared(&self, f: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.delta(&self.delta(f)?)?;
        let rhs = self.scaled(Sign::Minus, &self.delta_with(&self.mu_sq, f)?)?;
        Ok(Defect::new("δ² = −δ_{μ²}", lhs, rhs))
    }

    /// `dev_• δ (f ⊗ g) = δ(f•g) − f•δg − (−1)^{|g|} δf•g`.
    pub fn dev_total(&self, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let a = self.delta(&self.total(f, g)?)?;
        let b = self.total(f, &self.delta(g)?)?;
        let c = self.total(&self.delta(f)?, g)?;
        self.combine(self.operad.degree(&a), &[(Sign::Plus, &a), (Sign::Minus, &b), (-Sign::pow(self.red(g)), &c)])
    }

    /// `(−1)^{|g|} dev_• δ (f ⊗ g) = f ⌣ g − (−1)^{fg} g ⌣ f`.
    pub fn total_deviation_identity(&self, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.scaled(Sign::pow(self.red(g)), &self.dev_total(f, g)?)?;
        let rhs = self.graded_cup_commutator(f, g)?;
        Ok(Defect::new("derivation deviation over •", lhs, rhs))
    }

    /// `f ⌣ g − (−1)^{fg} g ⌣ f`.
    pub fn graded_cup_commutator(&self, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let a = self.cup(f, g)?;
        let b = self.cup(g, f)?;
        self.combine(self.operad.degree(&a), &[(Sign::Plus, &a), (-Sign::pow(self.deg(f) * self.deg(g)), &b)])
    }

    /// `dev_{…} δ (h ⊗ f ⊗ g) = δ{h,f,g} − {h,f,δg} − (−1)^{|g|}{h,δf,g} − (−1)^{|g|+|f|}{δh,f,g}`.
    pub fn dev_tribrace(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let (fr, gr) = (self.red(f), self.red(g));
        let a = self.delta(&self.tribrace(h, f, g)?)?;
        let b = self.tribrace(h, f, &self.delta(g)?)?;
        let c = self.tribrace(h, &self.delta(f)?, g)?;
        let d = self.tribrace(&self.delta(h)?, f, g)?;
        self.combine(
            self.operad.degree(&a),
            &[(Sign::Plus, &a), (Sign::Minus, &b), (-Sign::pow(gr), &c), (-Sign::pow(gr + fr), &d)],
        )
    }

    /// `(−1)^{|g|} dev δ(h⊗f⊗g) = (h•f)⌣g + (−1)^{|h|f} f⌣(h•g) − h•(f⌣g)`.
    pub fn tribrace_deviation_identity(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.scaled(Sign::pow(self.red(g)), &self.dev_tribrace(h, f, g)?)?;
        let a = self.cup(&self.total(h, f)?, g)?;
        let b = self.cup(f, &self.total(h, g)?)?;
        let c = self.total(h, &self.cup(f, g)?)?;
        let s = Sign::pow(self.red(h) * self.deg(f));
        let rhs = self.combine(self.operad.degree(&lhs), &[(Sign::Plus, &a), (s, &b), (Sign::Minus, &c)])?;
        Ok(Defect::new("derivation deviation over tribraces", lhs, rhs))
    }

    /// `[h,f]⌣g + (−1)^{|h|f} f⌣[h,g] − [h, f⌣g]`.
    pub fn leibniz_defect(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<P::Elem> {
        let a = self.cup(&self.bracket(h, f)?, g)?;
        let b = self.cup(f, &self.bracket(h, g)?)?;
        let c = self.bracket(h, &self.cup(f, g)?)?;
        let s = Sign::pow(self.red(h) * self.deg(f));
        self.combine(self.operad.degree(&a), &[(Sign::Plus, &a), (s, &b), (Sign::Minus, &c)])
    }

    /// `(−1)^{|g|} dev δ(h⊗f⊗g) = [h,f]⌣g + (−1)^{|h|f} f⌣[h,g] − [h, f⌣g]`.
    pub fn bracket_deviation_identity(&self, h: &P::Elem, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.scaled(Sign::pow(self.red(g)), &self.dev_tribrace(h, f, g)?)?;
        let rhs = self.leibniz_defect(h, f, g)?;
        Ok(Defect::new("derivation deviation via brackets", lhs, rhs))
    }

    /// `(f⌣g)•h = f⌣(g•h) + (−1)^{|h|g} (f•h)⌣g`.
    pub fn right_translation(&self, f: &P::Elem, g: &P::Elem, h: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.total(&self.cup(f, g)?, h)?;
        let a = self.cup(f, &self.total(g, h)?)?;
        let b = self.cup(&self.total(f, h)?, g)?;
        let rhs = self.combine(self.operad.degree(&lhs), &[(Sign::Plus, &a), (Sign::pow(self.red(h) * self.deg(g)), &b)])?;
        Ok(Defect::new("right translation is a cup derivation", lhs, rhs))
    }

    /// `(f⌣g)⌣h − f⌣(g⌣h)`.
    pub fn cup_associativity_defect(&self, f: &P::Elem, g: &P::Elem, h: &P::Elem) -> Result<P::Elem> {
        let a = self.cup(&self.cup(f, g)?, h)?;
        let b = self.cup(f, &self.cup(g, h)?)?;
        self.combine(self.operad.degree(&a), &[(Sign::Plus, &a), (Sign::Minus, &b)])
    }

    /// `(f⌣g)⌣h − f⌣(g⌣h) = (−1)^g {μ², f, g, h}`.
    ///
    /// The sign `(−1)^g` is forced: in the endomorphism pre-operad the
    /// tetrabrace reduces to the single term `((μ²∘_0 f)∘_f g)∘_{f+g} h`,
    /// whose Koszul sign differs from that of the associator by exactly
    /// `(−1)^g`.
    pub fn cup_associator(&self, f: &P::Elem, g: &P::Elem, h: &P::Elem) -> Result<Defect<P::Elem>> {
        let lhs = self.cup_associativity_defect(f, g, h)?;
        let rhs = self.scaled(Sign::pow(self.deg(g)), &self.tetrabrace(&self.mu_sq, f, g, h)?)?;
        Ok(Defect::new("cup associator", lhs, rhs))
    }

    /// `δ(f⌣g) − f⌣δg − (−1)^g δf⌣g = (−1)^{|g|} {μ², f, g}`.
    pub fn cup_derivation(&self, f: &P::Elem, g: &P::Elem) -> Result<Defect<P::Elem>> {
        let a = self.delta(&self.cup(f, g)?)?;
        let b = self.cup(f, &self.delta(g)?)?;
        let c = self.cup(&self.delta(f)?, g)?;
        let lhs = self.combine(self.operad.degree(&a), &[(Sign::Plus, &a), (Sign::Minus, &b), (-Sign::pow(self.deg(g)), &c)])?;
        let rhs = self.scaled(Sign::pow(self.red(g)), &self.tribrace(&self.mu_sq, f, g)?)?;
        Ok(Defect::new("cup derivation obstruction", lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{load_algebra, tests::DUAL, EndoOperad};

    fn calc() -> Calculus<EndoOperad> {
        let a = load_algebra(DUAL, None).unwrap();
        Calculus::new(a.operad(), a.mu()).unwrap()
    }

    fn element(c: &Calculus<EndoOperad>, i: usize) -> Cochain {
        Cochain::basis(c.operad().shape(), 0, i)
    }

    #[test]
    fn delta_of_unit_is_mu() {
        let c = calc();
        assert_eq!(c.delta(&c.unit()).unwrap(), *c.mu());
    }

    #[test]
    fn mu_must_have_degree_two() {
        let a = load_algebra(DUAL, None).unwrap();
        assert!(matches!(Calculus::new(a.operad(), Cochain::identity(a.shape)), Err(Error::Degree(_))));
    }

    #[test]
    fn degree_zero_conventions() {
        let c = calc();
        let (one, x) = (element(&c, 0), element(&c, 1));
        // f • g is an empty sum for deg f = 0, but lands in C^{−1} when deg g = 0 too.
        assert!(c.total(&x, &c.unit()).unwrap().is_zero());
        assert!(matches!(c.total(&x, &one), Err(Error::NegativeDegree(-1))));
        assert!(matches!(c.bracket(&x, &one), Err(Error::NegativeDegree(-1))));
        // On C^0 the cup product is the algebra product.
        assert_eq!(c.cup(&one, &x).unwrap(), x);
        assert!(c.cup(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn composition_slot_out_of_range() {
        let c = calc();
        assert!(matches!(c.compose(c.mu(), 2, c.mu()), Err(Error::Position { slot: 2, degree: 2 })));
    }

    #[test]
    fn witness_locates_first_difference() {
        let c = calc();
        let d = Defect::new("probe", c.mu().clone(), c.operad().zero(2).unwrap());
        let w = d.witness().unwrap();
        assert_eq!((w.output, w.inputs.clone(), w.lhs.as_str(), w.rhs.as_str()), (0, vec![0, 0], "1", "0"));
        assert!(Defect::new("same", c.unit(), c.unit()).witness().is_none());
    }
}
