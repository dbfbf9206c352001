//! The endomorphism pre-operad of a finite-dimensional algebra.
//!
//! A cochain of degree `n` is a multilinear map `A^{⊗n} → A`, stored as a
//! dense row-major tensor `t[out][in_1]…[in_n]` of `d^(n+1)` coefficients.
//! Degree-0 cochains are elements of `A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactfield::{Field, Scalar};
use crate::opcalc::PreOperad;
use crate::sign::Sign;

/// Default cap on the number of coefficients of any single cochain.
pub const DEFAULT_MEMORY_CAP: usize = 1_000_000;

/// The underlying module `A = K^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuleShape {
    pub dim: usize,
    pub field: Field,
}

impl ModuleShape {
    pub fn new(dim: usize, field: Field) -> Self {
        assert!(dim > 0, "module dimension must be positive");
        ModuleShape { dim, field }
    }

    /// Number of coefficients of a degree-`n` cochain, `d^(n+1)`.
    pub fn entries(&self, degree: usize) -> u128 {
        (self.dim as u128).saturating_pow(degree as u32 + 1)
    }

    pub fn check_cap(&self, degree: usize, cap: usize) -> Result<usize> {
        let entries = self.entries(degree);
        if entries > cap as u128 {
            Err(Error::Resource { entries, cap })
        } else {
            Ok(entries as usize)
        }
    }

    fn check(&self, other: &ModuleShape) -> Result<()> {
        self.field.check(other.field)?;
        if self.dim != other.dim {
            return Err(Error::Ambient(format!(
                "module dimensions {} and {} differ",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

/// A finite-dimensional algebra given by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSpec {
    pub name: String,
    pub shape: ModuleShape,
    pub basis: Vec<String>,
    /// `product[i][j]` holds the coordinates of `e_i · e_j`.
    pub product: Vec<Vec<Vec<Scalar>>>,
    pub unit: Option<Vec<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDocument {
    name: String,
    field: Field,
    dimension: usize,
    basis: Vec<String>,
    #[serde(default)]
    unit: Option<Vec<Value>>,
    product: Vec<Vec<Vec<Value>>>,
}

fn parse_coefficient(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().unwrap())),
        Value::Number(n) if n.is_u64() => Ok(field.parse(&n.to_string())?),
        Value::String(s) => Ok(field.parse(s)?),
        other => Err(Error::Load(format!(
            "coefficient {other} is neither an integer nor an \"a/b\" string"
        ))),
    }
}

fn parse_vector(field: Field, values: &[Value], dim: usize, what: &str) -> Result<Vec<Scalar>> {
    if values.len() != dim {
        return Err(Error::Load(format!(
            "{what} has {} coordinates, expected {dim}",
            values.len()
        )));
    }
    values.iter().map(|v| parse_coefficient(field, v)).collect()
}

/// Parses and validates an algebra document. `field_override` replaces the
/// field declared in the document.
pub fn load_algebra(document: &str, field_override: Option<Field>) -> Result<AlgebraSpec> {
    let doc: AlgebraDocument =
        serde_json::from_str(document).map_err(|e| Error::Load(e.to_string()))?;
    let field = field_override.unwrap_or(doc.field).validated()?;
    let d = doc.dimension;
    if d == 0 {
        return Err(Error::Load("dimension must be positive".into()));
    }
    if doc.basis.len() != d {
        return Err(Error::Load(format!("{} basis labels for dimension {d}", doc.basis.len())));
    }
    if doc.product.len() != d {
        return Err(Error::Load(format!("product table has {} rows, expected {d}", doc.product.len())));
    }
    let mut product = Vec::with_capacity(d);
    for (i, row) in doc.product.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Load(format!("product row {i} has {} entries, expected {d}", row.len())));
        }
        let row = row
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let what = format!("{}·{}", doc.basis[i], doc.basis[j]);
                parse_vector(field, v, d, &what)
            })
            .collect::<Result<Vec<_>>>()?;
        product.push(row);
    }
    let unit = doc.unit.as_deref().map(|u| parse_vector(field, u, d, "unit")).transpose()?;
    let spec = AlgebraSpec {
        name: doc.name,
        shape: ModuleShape::new(d, field),
        basis: doc.basis,
        product,
        unit,
    };
    spec.check_unit()?;
    Ok(spec)
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.shape.dim
    }

    pub fn field(&self) -> Field {
        self.shape.field
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![self.field().zero(); d];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai * bj;
                for (o, c) in out.iter_mut().zip(&self.product[i][j]) {
                    o.add_product(&ab, c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        v[i] = self.field().one();
        v
    }

    fn check_unit(&self) -> Result<()> {
        let Some(u) = &self.unit else { return Ok(()) };
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            if self.multiply(u, &e) != e {
                return Err(Error::Load(format!("declared unit fails u·{} = {}", self.basis[i], self.basis[i])));
            }
            if self.multiply(&e, u) != e {
                return Err(Error::Load(format!("declared unit fails {}·u = {}", self.basis[i], self.basis[i])));
            }
        }
        Ok(())
    }

    /// The multiplication as a degree-2 cochain: `t[k][i][j]` is the `k`-th
    /// coordinate of `e_i · e_j`.
    pub fn mu(&self) -> Cochain {
        let d = self.dim();
        let mut data = vec![self.field().zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    data[k * d * d + i * d + j] = self.product[i][j][k].clone();
                }
            }
        }
        Cochain { shape: self.shape, degree: 2, data }
    }

    pub fn operad(&self) -> EndoOperad {
        EndoOperad::new(self.shape)
    }
}

/// A homogeneous element of `Hom(A^{⊗n}, A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    shape: ModuleShape,
    degree: usize,
    data: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(shape: ModuleShape, degree: usize) -> Cochain {
        let n = shape.entries(degree) as usize;
        Cochain { shape, degree, data: vec![shape.field.zero(); n] }
    }

    /// The standard basis cochain with a single `1` at flat index `index`.
    pub fn basis(shape: ModuleShape, degree: usize, index: usize) -> Cochain {
        let mut c = Cochain::zero(shape, degree);
        c.data[index] = shape.field.one();
        c
    }

    pub fn from_data(shape: ModuleShape, degree: usize, data: Vec<Scalar>) -> Result<Cochain> {
        let expected = shape.entries(degree) as usize;
        if data.len() != expected {
            return Err(Error::Dimension { expected, got: data.len() });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != shape.field) {
            shape.field.check(bad.field())?;
        }
        Ok(Cochain { shape, degree, data })
    }

    /// The identity map `1_A`.
    pub fn identity(shape: ModuleShape) -> Cochain {
        let d = shape.dim;
        let mut c = Cochain::zero(shape, 1);
        for i in 0..d {
            c.data[i * d + i] = shape.field.one();
        }
        c
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `|f| = deg f − 1`.
    pub fn reduced_degree(&self) -> i64 {
        self.degree as i64 - 1
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Splits a flat index into `(out, [in_1, …, in_n])`.
    pub fn multi_index(&self, flat: usize) -> (usize, Vec<usize>) {
        let d = self.shape.dim;
        let mut inputs = vec![0; self.degree];
        let mut rest = flat;
        for slot in inputs.iter_mut().rev() {
            *slot = rest % d;
            rest /= d;
        }
        (rest, inputs)
    }

    pub fn flat_index(&self, out: usize, inputs: &[usize]) -> usize {
        let d = self.shape.dim;
        inputs.iter().fold(out, |acc, &i| acc * d + i)
    }

    pub fn get(&self, out: usize, inputs: &[usize]) -> &Scalar {
        &self.data[self.flat_index(out, inputs)]
    }

    fn check_same(&self, other: &Cochain) -> Result<()> {
        self.shape.check(&other.shape)?;
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add cochains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.accumulate(Sign::Plus, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.accumulate(Sign::Minus, other)?;
        Ok(out)
    }

    pub fn neg(&self) -> Cochain {
        let data = self.data.iter().map(|x| -x).collect();
        Cochain { data, ..*self }
    }

    pub fn scale(&self, k: &Scalar) -> Result<Cochain> {
        self.shape.field.check(k.field())?;
        let data = self.data.iter().map(|x| x * k).collect();
        Ok(Cochain { data, ..*self })
    }

    pub fn signed(&self, sign: Sign) -> Cochain {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => self.neg(),
        }
    }

    /// `self += sign · other`.
    pub fn accumulate(&mut self, sign: Sign, other: &Cochain) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if b.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => *a += b,
                Sign::Minus => *a -= b,
            }
        }
        Ok(())
    }

    /// First flat index at which `self` and `other` differ.
    pub fn first_difference(&self, other: &Cochain) -> Option<usize> {
        if self.degree != other.degree || self.shape != other.shape {
            return Some(0);
        }
        self.data.iter().zip(&other.data).position(|(a, b)| a != b)
    }

    /// Multilinear evaluation on coordinate vectors.
    pub fn evaluate(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: args.len() });
        }
        let d = self.shape.dim;
        for a in args {
            if a.len() != d {
                return Err(Error::Dimension { expected: d, got: a.len() });
            }
            if let Some(x) = a.first() {
                self.shape.field.check(x.field())?;
            }
        }
        let mut out = vec![self.shape.field.zero(); d];
        let inputs = d.pow(self.degree as u32);
        for (flat, t) in self.data.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let (o, idx) = (flat / inputs, flat % inputs);
            let mut coeff = t.clone();
            let mut rest = idx;
            for a in args.iter().rev() {
                coeff = &coeff * &a[rest % d];
                rest /= d;
                if coeff.is_zero() {
                    break;
                }
            }
            out[o] += &coeff;
        }
        Ok(out)
    }

    /// Deterministic cochain with coefficients drawn uniformly from `[-3, 3]`.
    pub fn random(shape: ModuleShape, degree: usize, seed: u64, cap: usize) -> Result<Cochain> {
        let n = shape.check_cap(degree, cap)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..n).map(|_| shape.field.from_i64(rng.gen_range(-3..=3))).collect();
        Ok(Cochain { shape, degree, data })
    }
}

/// `f ∘_i g = (−1)^{i|g|} f ∘ (1^{⊗i} ⊗ g ⊗ 1^{⊗(|f|−i)})`, accumulated into
/// `acc` with an extra `sign`.
pub fn compose_into(acc: &mut Cochain, sign: Sign, f: &Cochain, i: usize, g: &Cochain) -> Result<()> {
    f.shape.check(&g.shape)?;
    f.shape.check(&acc.shape)?;
    let m = f.degree;
    let n = g.degree;
    if i >= m {
        return Err(Error::Position { slot: i, degree: m });
    }
    if acc.degree != m + n - 1 {
        return Err(Error::Degree(format!(
            "accumulator of degree {} for a composition of degree {}",
            acc.degree,
            m + n - 1
        )));
    }
    let d = f.shape.dim;
    let tail = d.pow((m - 1 - i) as u32);
    let g_inputs = d.pow(n as u32);
    let net = sign * Sign::pow(i as i64 * g.reduced_degree());

    // Nonzero entries of g, bucketed by output index.
    let mut by_out: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); d];
    for (flat, v) in g.data.iter().enumerate() {
        if !v.is_zero() {
            by_out[flat / g_inputs].push((flat % g_inputs, v));
        }
    }
    if by_out.iter().all(Vec::is_empty) {
        return Ok(());
    }

    for (flat, fv) in f.data.iter().enumerate() {
        if fv.is_zero() {
            continue;
        }
        let z = flat % tail;
        let k = (flat / tail) % d;
        let prefix = flat / (tail * d);
        let bucket = &by_out[k];
        if bucket.is_empty() {
            continue;
        }
        let fv = if net.is_minus() { -fv } else { fv.clone() };
        let base = prefix * g_inputs;
        for &(y, gv) in bucket {
            acc.data[(base + y) * tail + z].add_product(&fv, gv);
        }
    }
    Ok(())
}

/// `f ∘_i g` with a cap on the result size.
pub fn partial_compose(f: &Cochain, i: usize, g: &Cochain, cap: usize) -> Result<Cochain> {
    if f.degree == 0 || i >= f.degree {
        return Err(Error::Position { slot: i, degree: f.degree });
    }
    let degree = f.degree + g.degree - 1;
    f.shape.check_cap(degree, cap)?;
    let mut acc = Cochain::zero(f.shape, degree);
    compose_into(&mut acc, Sign::Plus, f, i, g)?;
    Ok(acc)
}

/// The endomorphism pre-operad `E_A` over a fixed module shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndoOperad {
    shape: ModuleShape,
    cap: usize,
}

impl EndoOperad {
    pub fn new(shape: ModuleShape) -> Self {
        EndoOperad { shape, cap: DEFAULT_MEMORY_CAP }
    }

    pub fn with_memory_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn shape(&self) -> ModuleShape {
        self.shape
    }

    pub fn memory_cap(&self) -> usize {
        self.cap
    }

    pub fn random(&self, degree: usize, seed: u64) -> Result<Cochain> {
        Cochain::random(self.shape, degree, seed, self.cap)
    }

    /// All standard basis cochains of the given degree.
    pub fn basis(&self, degree: usize) -> Result<impl Iterator<Item = Cochain> + '_> {
        let n = self.shape.check_cap(degree, self.cap)?;
        Ok((0..n).map(move |i| Cochain::basis(self.shape, degree, i)))
    }
}

impl PreOperad for EndoOperad {
    type Elem = Cochain;

    fn degree(&self, f: &Cochain) -> usize {
        f.degree
    }

    fn zero(&self, degree: usize) -> Result<Cochain> {
        self.shape.check_cap(degree, self.cap)?;
        Ok(Cochain::zero(self.shape, degree))
    }

    fn unit(&self) -> Cochain {
        Cochain::identity(self.shape)
    }

    fn compose_into(&self, acc: &mut Cochain, sign: Sign, f: &Cochain, i: usize, g: &Cochain) -> Result<()> {
        compose_into(acc, sign, f, i, g)
    }

    fn accumulate(&self, acc: &mut Cochain, sign: Sign, g: &Cochain) -> Result<()> {
        acc.accumulate(sign, g)
    }

    fn is_zero(&self, f: &Cochain) -> bool {
        f.is_zero()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const DUAL: &str = r#"{"name":"dual","field":{"type":"rational"},"dimension":2,
        "basis":["1","x"],"unit":[1,0],
        "product":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;

    fn dual() -> AlgebraSpec {
        load_algebra(DUAL, None).unwrap()
    }

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn loads_dual_numbers() {
        let a = dual();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.product[1][1], vec![q(0), q(0)]);
        let mu = a.mu();
        assert_eq!(mu.degree(), 2);
        assert_eq!(mu.evaluate(&[vec![q(0), q(1)], vec![q(0), q(1)]]).unwrap(), vec![q(0), q(0)]);
        assert_eq!(mu.evaluate(&[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap(), vec![q(0), q(1)]);
    }

    #[test]
    fn load_errors() {
        let bad_unit = DUAL.replace(r#""unit":[1,0]"#, r#""unit":[0,1]"#);
        let err = load_algebra(&bad_unit, None).unwrap_err().to_string();
        assert!(err.contains("declared unit fails"), "{err}");
        let bad_arity = DUAL.replace("[[0,1],[0,0]]]", "[[0,1],[0]]]");
        assert!(load_algebra(&bad_arity, None).unwrap_err().to_string().contains("x·x"));
        let bad_p = DUAL.replace(r#"{"type":"rational"}"#, r#"{"type":"prime","p":12}"#);
        assert!(matches!(load_algebra(&bad_p, None), Err(Error::Field(_))));
        let float = DUAL.replace("[0,0]]]", "[0,0.5]]]");
        assert!(load_algebra(&float, None).is_err());
    }

    #[test]
    fn split_algebra_and_fractions() {
        let doc = r#"{"name":"QxQ","field":{"type":"rational"},"dimension":2,"basis":["e1","e2"],
            "unit":[1,1],"product":[[[1,0],[0,0]],[[0,0],[0,1]]]}"#;
        let a = load_algebra(doc, None).unwrap();
        let mu = a.mu();
        assert_eq!(mu.get(0, &[0, 0]), &q(1));
        assert_eq!(mu.get(1, &[1, 1]), &q(1));
        assert!(mu.get(0, &[0, 1]).is_zero());
        let frac = doc.replace("[[[1,0]", r#"[[["2/2",0]"#);
        assert_eq!(load_algebra(&frac, None).unwrap(), a);
        let fp = load_algebra(doc, Some(Field::prime(7).unwrap())).unwrap();
        assert_eq!(fp.field(), Field::Prime { p: 7 });
    }

    #[test]
    fn zero_structure_constants_give_zero_mu() {
        let doc = r#"{"name":"z","field":{"type":"rational"},"dimension":2,"basis":["a","b"],
            "product":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#;
        assert!(load_algebra(doc, None).unwrap().mu().is_zero());
    }

    #[test]
    fn evaluation_is_tensor_lookup() {
        let a = dual();
        let shape = a.shape;
        let f = Cochain::random(shape, 3, 7, DEFAULT_MEMORY_CAP).unwrap();
        let id = Cochain::identity(shape);
        let v = vec![q(5), q(-2)];
        assert_eq!(id.evaluate(&[v.clone()]).unwrap(), v);
        let col = f.evaluate(&[a.basis_vector(1), a.basis_vector(0), a.basis_vector(1)]).unwrap();
        assert_eq!(col, vec![f.get(0, &[1, 0, 1]).clone(), f.get(1, &[1, 0, 1]).clone()]);
        assert!(matches!(f.evaluate(&[v]), Err(Error::Arity { expected: 3, got: 1 })));
    }

    #[test]
    fn linear_structure() {
        let shape = dual().shape;
        let f = Cochain::random(shape, 2, 1, DEFAULT_MEMORY_CAP).unwrap();
        let g = Cochain::random(shape, 2, 2, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(f.add(&Cochain::zero(shape, 2)).unwrap(), f);
        assert!(f.scale(&q(0)).unwrap().is_zero());
        let k = q(-3);
        assert_eq!(
            f.add(&g).unwrap().scale(&k).unwrap(),
            f.scale(&k).unwrap().add(&g.scale(&k).unwrap()).unwrap()
        );
        assert!(matches!(f.add(&Cochain::zero(shape, 1)), Err(Error::Degree(_))));
        let other = ModuleShape::new(2, Field::prime(5).unwrap());
        assert!(matches!(f.add(&Cochain::zero(other, 2)), Err(Error::Field(_))));
    }

    #[test]
    fn random_is_deterministic() {
        let shape = dual().shape;
        let a = Cochain::random(shape, 3, 42, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(a, Cochain::random(shape, 3, 42, DEFAULT_MEMORY_CAP).unwrap());
        assert_eq!(Cochain::random(shape, 0, 3, DEFAULT_MEMORY_CAP).unwrap().data().len(), 2);
        assert!(matches!(Cochain::random(shape, 20, 0, 1000), Err(Error::Resource { .. })));
    }

    #[test]
    fn composition_errors() {
        let shape = dual().shape;
        let f = Cochain::random(shape, 2, 1, DEFAULT_MEMORY_CAP).unwrap();
        let a = Cochain::random(shape, 0, 1, DEFAULT_MEMORY_CAP).unwrap();
        assert!(matches!(partial_compose(&f, 2, &f, DEFAULT_MEMORY_CAP), Err(Error::Position { slot: 2, degree: 2 })));
        assert!(matches!(partial_compose(&a, 0, &f, DEFAULT_MEMORY_CAP), Err(Error::Position { .. })));
        assert!(matches!(partial_compose(&f, 0, &f, 4), Err(Error::Resource { .. })));
        let other = ModuleShape::new(3, Field::Rational);
        let h = Cochain::zero(other, 1);
        assert!(matches!(partial_compose(&f, 0, &h, DEFAULT_MEMORY_CAP), Err(Error::Ambient(_))));
    }
}
