//! Local fields, square classes, Hilbert symbols and coefficient systems.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A local field of characteristic zero: `Q_p`, `R` or `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LocalField {
    Padic { p: u64 },
    Real,
    Complex,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut a: i64, p: u64) -> u32 {
    assert!(a != 0, "valuation of zero");
    let p = p as i64;
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

/// Legendre symbol of a unit `a` modulo an odd prime.
pub fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    assert!(r != 0, "legendre symbol of a non-unit");
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

impl LocalField {
    pub const MAX_PRIME: u64 = 1 << 20;

    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > Self::MAX_PRIME {
            return Err(Error::UnsupportedField(format!("prime {p} too large")));
        }
        Ok(LocalField::Padic { p })
    }

    /// Checks a field that may have been deserialized without validation.
    pub fn validated(self) -> Result<Self> {
        match self {
            LocalField::Padic { p } => LocalField::padic(p),
            f => Ok(f),
        }
    }

    /// Parses `p3`, `Q_3`, `real`, `R`, `complex`, `C` or a JSON object.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            let f: LocalField =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("field: {e}")))?;
            return f.validated();
        }
        match t {
            "real" | "R" => return Ok(LocalField::Real),
            "complex" | "C" => return Ok(LocalField::Complex),
            _ => {}
        }
        let digits = t
            .strip_prefix("Q_")
            .or_else(|| t.strip_prefix("p"))
            .or_else(|| t.strip_prefix("Q"))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognized field '{s}'")))?;
        LocalField::padic(p)
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            LocalField::Padic { p } => Some(*p),
            _ => None,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        !matches!(self, LocalField::Padic { .. })
    }

    pub fn name(&self) -> String {
        match self {
            LocalField::Padic { p } => format!("Q_{p}"),
            LocalField::Real => "R".into(),
            LocalField::Complex => "C".into(),
        }
    }

    /// Least quadratic non-residue, used as the unit representative `u` for odd p.
    fn nonresidue(p: u64) -> i64 {
        (2..p as i64)
            .find(|&a| legendre(a, p) == -1)
            .expect("odd prime has a non-residue")
    }

    /// All square classes of `F^x`, in a fixed order starting with the trivial class.
    pub fn square_classes(&self) -> Vec<SquareClass> {
        let f = *self;
        match self {
            LocalField::Padic { p: 2 } => (0..2u8)
                .flat_map(|val| {
                    [1u8, 3, 5, 7].into_iter().map(move |unit| SquareClass {
                        field: f,
                        val,
                        unit,
                    })
                })
                .collect(),
            LocalField::Padic { .. } => (0..2u8)
                .flat_map(|val| {
                    (0..2u8).map(move |unit| SquareClass {
                        field: f,
                        val,
                        unit,
                    })
                })
                .collect(),
            LocalField::Real => (0..2u8)
                .map(|unit| SquareClass {
                    field: f,
                    val: 0,
                    unit,
                })
                .collect(),
            LocalField::Complex => vec![SquareClass {
                field: f,
                val: 0,
                unit: 0,
            }],
        }
    }

    pub fn one(&self) -> SquareClass {
        SquareClass {
            field: *self,
            val: 0,
            unit: if *self == (LocalField::Padic { p: 2 }) {
                1
            } else {
                0
            },
        }
    }

    /// Square class of a nonzero integer.
    pub fn class_of(&self, a: i64) -> Result<SquareClass> {
        if a == 0 {
            return Err(Error::InvalidForm("zero is not a unit".into()));
        }
        let f = *self;
        Ok(match *self {
            LocalField::Padic { p } => {
                let v = valuation(a, p);
                let u = a / (p as i64).pow(v);
                let unit = if p == 2 {
                    u.rem_euclid(8) as u8
                } else {
                    (legendre(u, p) == -1) as u8
                };
                SquareClass {
                    field: f,
                    val: (v % 2) as u8,
                    unit,
                }
            }
            LocalField::Real => SquareClass {
                field: f,
                val: 0,
                unit: (a < 0) as u8,
            },
            LocalField::Complex => SquareClass {
                field: f,
                val: 0,
                unit: 0,
            },
        })
    }

    pub fn minus_one(&self) -> SquareClass {
        self.class_of(-1).expect("nonzero")
    }

    /// Hilbert symbol `(a, b)_F`.
    pub fn hilbert(&self, a: i64, b: i64) -> Result<i8> {
        Ok(hilbert(self.class_of(a)?, self.class_of(b)?))
    }
}

/// An element of `F^x / (F^x)^2`.
///
/// `val` is the valuation mod 2.  For odd p, `unit` is 0 for squares and 1 for the
/// non-residue class; for p = 2 it is the unit part mod 8; over R it is 1 for negatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub field: LocalField,
    pub val: u8,
    pub unit: u8,
}

impl SquareClass {
    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Integer representative of the class.
    pub fn representative(&self) -> i64 {
        match self.field {
            LocalField::Padic { p: 2 } => 2i64.pow(self.val as u32) * self.unit as i64,
            LocalField::Padic { p } => {
                let u = if self.unit == 1 {
                    LocalField::nonresidue(p)
                } else {
                    1
                };
                (p as i64).pow(self.val as u32) * u
            }
            LocalField::Real => {
                if self.unit == 1 {
                    -1
                } else {
                    1
                }
            }
            LocalField::Complex => 1,
        }
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        debug_assert_eq!(self.field, other.field);
        let unit = match self.field {
            LocalField::Padic { p: 2 } => ((self.unit as u16 * other.unit as u16) % 8) as u8,
            _ => self.unit ^ other.unit,
        };
        SquareClass {
            field: self.field,
            val: self.val ^ other.val,
            unit,
        }
    }

    pub fn unit_label(&self) -> String {
        match self.field {
            LocalField::Padic { p: 2 } => self.unit.to_string(),
            LocalField::Padic { .. } => if self.unit == 1 { "u" } else { "1" }.into(),
            LocalField::Real => if self.unit == 1 { "-" } else { "+" }.into(),
            LocalField::Complex => "1".into(),
        }
    }

    /// Short label such as `1`, `u`, `p`, `pu`, `6`, `-`.
    pub fn label(&self) -> String {
        match self.field {
            LocalField::Padic { p } if p != 2 => match (self.val, self.unit) {
                (0, 0) => "1".into(),
                (0, _) => "u".into(),
                (_, 0) => "p".into(),
                _ => "pu".into(),
            },
            LocalField::Padic { .. } => self.representative().to_string(),
            _ => self.unit_label(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "val": self.val, "unit": self.unit_label() })
    }

    /// Reads `{"val":..,"unit":..}`, or a bare integer representative.
    pub fn from_json(field: LocalField, v: &Value) -> Result<SquareClass> {
        if let Some(a) = v.as_i64() {
            return field.class_of(a);
        }
        let val = v
            .get("val")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("square class needs 'val': {v}")))?;
        let unit = v
            .get("unit")
            .and_then(|u| {
                u.as_str()
                    .map(str::to_string)
                    .or_else(|| u.as_i64().map(|i| i.to_string()))
            })
            .ok_or_else(|| Error::Parse(format!("square class needs 'unit': {v}")))?;
        field
            .square_classes()
            .into_iter()
            .find(|c| c.val as u64 == val && c.unit_label() == unit)
            .ok_or_else(|| Error::Parse(format!("no square class {v} in {}", field.name())))
    }
}

/// Hilbert symbol of two square classes.
pub fn hilbert(a: SquareClass, b: SquareClass) -> i8 {
    debug_assert_eq!(a.field, b.field);
    match a.field {
        LocalField::Padic { p: 2 } => {
            let eps = |u: u8| ((u as u32 - 1) / 2) & 1;
            let omega = |u: u8| ((u as u32 * u as u32 - 1) / 8) & 1;
            let e = eps(a.unit) * eps(b.unit)
                + a.val as u32 * omega(b.unit)
                + b.val as u32 * omega(a.unit);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        LocalField::Padic { p } => {
            let sgn = |bit: u8| if bit == 1 { -1i8 } else { 1 };
            let mut r: i8 = 1;
            if a.val == 1 && b.val == 1 && ((p - 1) / 2) % 2 == 1 {
                r = -r;
            }
            if b.val == 1 {
                r *= sgn(a.unit);
            }
            if a.val == 1 {
                r *= sgn(b.unit);
            }
            r
        }
        LocalField::Real => {
            if a.unit == 1 && b.unit == 1 {
                -1
            } else {
                1
            }
        }
        LocalField::Complex => 1,
    }
}

/// An element `(a, t)` of `Hil(F) = F^x/(F^x)^2 x {+-1}`, with the twisted law
/// `(a,t)(a',t') = (aa', tt'(a,a')_F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HilElem {
    pub sq: SquareClass,
    pub sign: i8,
}

impl HilElem {
    pub fn identity(field: LocalField) -> HilElem {
        HilElem {
            sq: field.one(),
            sign: 1,
        }
    }

    pub fn mul(&self, other: &HilElem) -> HilElem {
        HilElem {
            sq: self.sq.mul(&other.sq),
            sign: self.sign * other.sign * hilbert(self.sq, other.sq),
        }
    }

    pub fn inverse(&self) -> HilElem {
        HilElem {
            sq: self.sq,
            sign: self.sign * hilbert(self.sq, self.sq),
        }
    }

    pub fn label(&self) -> String {
        format!(
            "({},{})",
            self.sq.label(),
            if self.sign > 0 { "+" } else { "-" }
        )
    }
}

/// All elements of `Hil(F)`.
pub fn hil_elements(field: LocalField) -> Vec<HilElem> {
    field
        .square_classes()
        .into_iter()
        .flat_map(|sq| [1i8, -1].into_iter().map(move |sign| HilElem { sq, sign }))
        .collect()
}

/// The division algebra `D` of a coefficient system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionKind {
    Field,
    /// `E = F(sqrt d)` for a non-square class `d`.
    Quadratic(SquareClass),
    Quaternion,
}

impl DivisionKind {
    pub fn tag(&self) -> &'static str {
        match self {
            DivisionKind::Field => "F",
            DivisionKind::Quadratic(_) => "quadratic_ext",
            DivisionKind::Quaternion => "quaternion",
        }
    }
}

/// A triple `(F, D, eps)`.  `eps` is the sign of the form on the U side;
/// the partner space V carries the opposite sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientSystem {
    pub field: LocalField,
    pub division: DivisionKind,
    pub epsilon: i8,
}

impl CoefficientSystem {
    pub fn new(field: LocalField, division: DivisionKind, epsilon: i8) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::InvalidCoefficientSystem(format!(
                "epsilon must be +-1, got {epsilon}"
            )));
        }
        match division {
            DivisionKind::Field => {}
            DivisionKind::Quadratic(d) => {
                if d.field != field {
                    return Err(Error::FieldMismatch(
                        "quadratic datum over another field".into(),
                    ));
                }
                if d.is_one() {
                    return Err(Error::InvalidCoefficientSystem(
                        "quadratic datum must be a non-square".into(),
                    ));
                }
            }
            DivisionKind::Quaternion => {
                if field == LocalField::Complex {
                    return Err(Error::InvalidCoefficientSystem(
                        "C has no quaternion division algebra".into(),
                    ));
                }
            }
        }
        if field == LocalField::Complex && division != DivisionKind::Field {
            return Err(Error::InvalidCoefficientSystem(
                "over C only D = F is possible".into(),
            ));
        }
        Ok(CoefficientSystem {
            field,
            division,
            epsilon,
        })
    }

    /// `(a, d)_F` for the quadratic datum; the character of `F^x/N^x`.
    pub fn norm_character(&self, a: SquareClass) -> Result<i8> {
        match self.division {
            DivisionKind::Quadratic(d) => Ok(hilbert(a, d)),
            _ => Err(Error::InvalidCoefficientSystem(
                "norm character needs a quadratic extension".into(),
            )),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "field": self.field,
            "D": self.division.tag(),
            "epsilon": self.epsilon,
        });
        if let DivisionKind::Quadratic(d) = self.division {
            v["d"] = d.to_json();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    #[test]
    fn square_class_counts() {
        assert_eq!(q(3).square_classes().len(), 4);
        assert_eq!(q(2).square_classes().len(), 8);
        assert_eq!(LocalField::Real.square_classes().len(), 2);
        assert_eq!(LocalField::Complex.square_classes().len(), 1);
        assert!(LocalField::padic(9).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(q(3).hilbert(3, 3).unwrap(), -1);
        assert_eq!(q(5).hilbert(5, 5).unwrap(), 1);
        assert_eq!(q(2).hilbert(-1, -1).unwrap(), -1);
        assert_eq!(q(2).hilbert(2, 3).unwrap(), -1);
        assert_eq!(LocalField::Real.hilbert(-1, -1).unwrap(), -1);
        assert_eq!(LocalField::Complex.hilbert(-1, -1).unwrap(), 1);
    }

    #[test]
    fn hilbert_is_symmetric_bilinear() {
        for f in [q(2), q(3), q(5), q(7), LocalField::Real] {
            let cls = f.square_classes();
            for &a in &cls {
                for &b in &cls {
                    assert_eq!(hilbert(a, b), hilbert(b, a));
                    for &c in &cls {
                        assert_eq!(hilbert(a.mul(&b), c), hilbert(a, c) * hilbert(b, c));
                    }
                }
                assert_eq!(hilbert(a, a), hilbert(a, f.minus_one()));
            }
        }
    }

    #[test]
    fn representatives_round_trip() {
        for f in [q(2), q(3), q(11), LocalField::Real, LocalField::Complex] {
            for c in f.square_classes() {
                assert_eq!(f.class_of(c.representative()).unwrap(), c);
                assert_eq!(SquareClass::from_json(f, &c.to_json()).unwrap(), c);
            }
        }
    }

    #[test]
    fn hil_group_law() {
        for f in [q(2), q(3), LocalField::Real, LocalField::Complex] {
            let els = hil_elements(f);
            let e = HilElem::identity(f);
            for a in &els {
                assert_eq!(a.mul(&a.inverse()), e);
                for b in &els {
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in &els {
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_fields() {
        assert_eq!(LocalField::parse("p3").unwrap(), q(3));
        assert_eq!(LocalField::parse("Q_7").unwrap(), q(7));
        assert_eq!(
            LocalField::parse(r#"{"kind":"padic","p":5}"#).unwrap(),
            q(5)
        );
        assert_eq!(LocalField::parse("real").unwrap(), LocalField::Real);
        assert!(LocalField::parse(r#"{"kind":"padic","p":4}"#).is_err());
    }

    #[test]
    fn coefficient_system_validation() {
        let f = q(3);
        let u = f.class_of(2).unwrap();
        assert!(CoefficientSystem::new(f, DivisionKind::Quadratic(u), 1).is_ok());
        assert!(CoefficientSystem::new(f, DivisionKind::Quadratic(f.one()), 1).is_err());
        assert!(CoefficientSystem::new(LocalField::Complex, DivisionKind::Quaternion, 1).is_err());
        assert!(CoefficientSystem::new(f, DivisionKind::Field, 0).is_err());
    }
}
