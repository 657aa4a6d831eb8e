//! Small concrete groups attached to a local field: square classes, norm classes,
//! signed norm classes of a quadratic extension and `Hil(F)`, each with an explicit
//! multiplication and a Smith-normalized presentation.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::abgroups::{AbGroup, GroupElem, Subquotient};
use crate::error::{Error, Result};
use crate::localfield::{hil_elements, hilbert, HilElem, LocalField, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalGroupKind {
    Trivial,
    /// `F^x / (F^x)^2`.
    Squares,
    /// `F^x / N^x` for the quadratic datum, identified through `a -> (a, d)_F`.
    Norms,
    /// `E_+- / N^x`: trace-zero and rational elements of `E^x` modulo norms.
    SignedNorms,
    /// `Hil(F)`.
    Hilbert,
    /// `{+-1}`.
    Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalGroup {
    pub kind: LocalGroupKind,
    pub field: LocalField,
    /// Quadratic datum `d`, required by `Norms` and `SignedNorms`.
    pub ext: Option<SquareClass>,
}

/// Element of a [`LocalGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalElem {
    Trivial,
    Square(SquareClass),
    /// Value of `(a, d)_F`; `+1` is the norm class.
    Norm(i8),
    /// `side = 1` for the class of `sqrt(d) a`, with `norm = (a, d)_F`.
    Signed {
        side: u8,
        norm: i8,
    },
    Hil(HilElem),
    Sign(i8),
}

impl LocalGroup {
    pub fn new(
        kind: LocalGroupKind,
        field: LocalField,
        ext: Option<SquareClass>,
    ) -> Result<LocalGroup> {
        let needs_ext = matches!(kind, LocalGroupKind::Norms | LocalGroupKind::SignedNorms);
        match ext {
            Some(d) if d.is_one() => {
                return Err(Error::InvalidCoefficientSystem(
                    "quadratic datum is a square".into(),
                ))
            }
            Some(d) if d.field != field => {
                return Err(Error::FieldMismatch(
                    "quadratic datum over another field".into(),
                ))
            }
            None if needs_ext => {
                return Err(Error::InvalidCoefficientSystem(
                    "quadratic datum required".into(),
                ))
            }
            _ => {}
        }
        Ok(LocalGroup {
            kind,
            field,
            ext: if needs_ext { ext } else { None },
        })
    }

    fn d(&self) -> SquareClass {
        self.ext.expect("validated at construction")
    }

    pub fn identity(&self) -> LocalElem {
        match self.kind {
            LocalGroupKind::Trivial => LocalElem::Trivial,
            LocalGroupKind::Squares => LocalElem::Square(self.field.one()),
            LocalGroupKind::Norms => LocalElem::Norm(1),
            LocalGroupKind::SignedNorms => LocalElem::Signed { side: 0, norm: 1 },
            LocalGroupKind::Hilbert => LocalElem::Hil(HilElem::identity(self.field)),
            LocalGroupKind::Sign => LocalElem::Sign(1),
        }
    }

    pub fn contains(&self, e: &LocalElem) -> bool {
        match (self.kind, e) {
            (LocalGroupKind::Trivial, LocalElem::Trivial) => true,
            (LocalGroupKind::Squares, LocalElem::Square(s)) => s.field == self.field,
            (LocalGroupKind::Norms, LocalElem::Norm(n)) => n.abs() == 1,
            (LocalGroupKind::SignedNorms, LocalElem::Signed { side, norm }) => {
                *side <= 1 && norm.abs() == 1
            }
            (LocalGroupKind::Hilbert, LocalElem::Hil(h)) => {
                h.sq.field == self.field && h.sign.abs() == 1
            }
            (LocalGroupKind::Sign, LocalElem::Sign(s)) => s.abs() == 1,
            _ => false,
        }
    }

    pub fn mul(&self, a: &LocalElem, b: &LocalElem) -> Result<LocalElem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::TypeMismatch(format!(
                "{a:?} or {b:?} not in {:?}",
                self.kind
            )));
        }
        Ok(match (a, b) {
            (LocalElem::Trivial, LocalElem::Trivial) => LocalElem::Trivial,
            (LocalElem::Square(x), LocalElem::Square(y)) => LocalElem::Square(x.mul(y)),
            (LocalElem::Norm(x), LocalElem::Norm(y)) => LocalElem::Norm(x * y),
            (
                LocalElem::Signed { side: s1, norm: n1 },
                LocalElem::Signed { side: s2, norm: n2 },
            ) => {
                // (sqrt(d) a)(sqrt(d) b) = d a b and (d, d)_F = (-1, d)_F.
                let twist = if *s1 == 1 && *s2 == 1 {
                    hilbert(self.field.minus_one(), self.d())
                } else {
                    1
                };
                LocalElem::Signed {
                    side: s1 ^ s2,
                    norm: n1 * n2 * twist,
                }
            }
            (LocalElem::Hil(x), LocalElem::Hil(y)) => LocalElem::Hil(x.mul(y)),
            (LocalElem::Sign(x), LocalElem::Sign(y)) => LocalElem::Sign(x * y),
            _ => unreachable!("membership checked"),
        })
    }

    pub fn pow(&self, a: &LocalElem, k: i64) -> Result<LocalElem> {
        let base = if k < 0 { self.inverse(a)? } else { *a };
        let mut r = self.identity();
        for _ in 0..k.unsigned_abs() {
            r = self.mul(&r, &base)?;
        }
        Ok(r)
    }

    pub fn inverse(&self, a: &LocalElem) -> Result<LocalElem> {
        let e = self.identity();
        self.elements()
            .into_iter()
            .find(|b| self.mul(a, b).map(|p| p == e).unwrap_or(false))
            .ok_or_else(|| Error::TypeMismatch(format!("{a:?} has no inverse in {:?}", self.kind)))
    }

    pub fn elements(&self) -> Vec<LocalElem> {
        match self.kind {
            LocalGroupKind::Trivial => vec![LocalElem::Trivial],
            LocalGroupKind::Squares => self
                .field
                .square_classes()
                .into_iter()
                .map(LocalElem::Square)
                .collect(),
            LocalGroupKind::Norms => vec![LocalElem::Norm(1), LocalElem::Norm(-1)],
            LocalGroupKind::SignedNorms => [(0, 1), (0, -1), (1, 1), (1, -1)]
                .into_iter()
                .map(|(side, norm)| LocalElem::Signed { side, norm })
                .collect(),
            LocalGroupKind::Hilbert => hil_elements(self.field)
                .into_iter()
                .map(LocalElem::Hil)
                .collect(),
            LocalGroupKind::Sign => vec![LocalElem::Sign(1), LocalElem::Sign(-1)],
        }
    }

    /// Class in `F^x/N^x` of a square class `a`.
    pub fn norm_class(&self, a: SquareClass) -> LocalElem {
        LocalElem::Norm(hilbert(a, self.d()))
    }

    pub fn label(&self, e: &LocalElem) -> String {
        match e {
            LocalElem::Trivial => "1".into(),
            LocalElem::Square(s) => s.label(),
            LocalElem::Norm(n) => if *n > 0 { "N" } else { "nu N" }.into(),
            LocalElem::Signed { side, norm } => {
                let base = if *norm > 0 { "N" } else { "nu N" };
                if *side == 1 {
                    format!("delta {base}")
                } else {
                    base.into()
                }
            }
            LocalElem::Hil(h) => h.label(),
            LocalElem::Sign(s) => if *s > 0 { "+1" } else { "-1" }.into(),
        }
    }

    pub fn elem_to_json(&self, e: &LocalElem) -> Value {
        match e {
            LocalElem::Trivial => json!("1"),
            LocalElem::Square(s) => s.to_json(),
            LocalElem::Norm(n) => json!({ "norm": n }),
            LocalElem::Signed { side, norm } => json!({ "side": side, "norm": norm }),
            LocalElem::Hil(h) => json!({ "class": h.sq.to_json(), "sign": h.sign }),
            LocalElem::Sign(s) => json!(s),
        }
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<LocalElem> {
        let bad = || Error::Parse(format!("cannot read {v} as an element of {:?}", self.kind));
        let sign_of = |x: Option<&Value>| -> Result<i8> {
            match x.and_then(Value::as_i64) {
                Some(1) => Ok(1),
                Some(-1) => Ok(-1),
                _ => Err(bad()),
            }
        };
        let e = match self.kind {
            LocalGroupKind::Trivial => LocalElem::Trivial,
            LocalGroupKind::Squares => LocalElem::Square(SquareClass::from_json(self.field, v)?),
            LocalGroupKind::Norms => LocalElem::Norm(sign_of(v.get("norm"))?),
            LocalGroupKind::SignedNorms => {
                let side = v
                    .get("side")
                    .and_then(Value::as_u64)
                    .filter(|&s| s <= 1)
                    .ok_or_else(bad)? as u8;
                LocalElem::Signed {
                    side,
                    norm: sign_of(v.get("norm"))?,
                }
            }
            LocalGroupKind::Hilbert => {
                let sq = SquareClass::from_json(self.field, v.get("class").ok_or_else(bad)?)?;
                LocalElem::Hil(HilElem {
                    sq,
                    sign: sign_of(v.get("sign"))?,
                })
            }
            LocalGroupKind::Sign => LocalElem::Sign(sign_of(Some(v))?),
        };
        Ok(e)
    }

    /// Smith-normalized presentation with explicit coordinate maps.
    pub fn presentation(&self) -> Result<Presented> {
        Presented::new(*self)
    }
}

/// A [`LocalGroup`] together with an isomorphism onto an [`AbGroup`].
#[derive(Clone, Debug)]
pub struct Presented {
    pub model: LocalGroup,
    pub group: AbGroup,
    to_coords: HashMap<LocalElem, GroupElem>,
    from_coords: HashMap<GroupElem, LocalElem>,
}

impl Presented {
    fn new(model: LocalGroup) -> Result<Presented> {
        let els = model.elements();
        let k = els.len();
        let index: HashMap<LocalElem, usize> =
            els.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let unit = |i: usize| {
            let mut v = vec![0i64; k];
            v[i] = 1;
            v
        };
        // Multiplication-table presentation: generators are the elements themselves.
        let mut rels = vec![unit(index[&model.identity()])];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate().skip(i) {
                let c = index[&model.mul(a, b)?];
                let mut v = vec![0i64; k];
                v[i] += 1;
                v[j] += 1;
                v[c] -= 1;
                rels.push(v);
            }
        }
        let gens: Vec<Vec<i64>> = (0..k).map(unit).collect();
        let sq = Subquotient::build(k, &gens, &rels, "g")?;
        let eval = |v: &[i64]| -> Result<LocalElem> {
            let mut acc = model.identity();
            for (i, &c) in v.iter().enumerate() {
                acc = model.mul(&acc, &model.pow(&els[i], c)?)?;
            }
            Ok(acc)
        };
        let gen_elems: Vec<LocalElem> = sq.gens.iter().map(|g| eval(g)).collect::<Result<_>>()?;
        let labels: Vec<String> = gen_elems.iter().map(|e| model.label(e)).collect();
        let group = AbGroup::new(sq.group.moduli().to_vec(), labels)?;
        let mut to_coords = HashMap::new();
        let mut from_coords = HashMap::new();
        for (i, e) in els.iter().enumerate() {
            let c = group.normalize(&sq.coords(&unit(i)).expect("element lies in the lattice"));
            to_coords.insert(*e, c.clone());
            from_coords.insert(c, *e);
        }
        if from_coords.len() != k || group.order() != Some(k as u64) {
            return Err(Error::InvalidGroup(format!(
                "presentation of {:?} is not bijective",
                model.kind
            )));
        }
        Ok(Presented {
            model,
            group,
            to_coords,
            from_coords,
        })
    }

    pub fn coords(&self, e: &LocalElem) -> Result<GroupElem> {
        self.to_coords
            .get(e)
            .cloned()
            .ok_or_else(|| Error::TypeMismatch(format!("{e:?} not in {:?}", self.model.kind)))
    }

    pub fn elem(&self, c: &GroupElem) -> LocalElem {
        self.from_coords[&self.group.normalize(&c.0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    #[test]
    fn hil_structure() {
        let h3 = LocalGroup::new(LocalGroupKind::Hilbert, q(3), None)
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(h3.group.order(), Some(8));
        let hr = LocalGroup::new(LocalGroupKind::Hilbert, LocalField::Real, None)
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(hr.group.invariant_factors(), (0, vec![4]));
        let hc = LocalGroup::new(LocalGroupKind::Hilbert, LocalField::Complex, None)
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(hc.group.order(), Some(2));
        let h2 = LocalGroup::new(LocalGroupKind::Hilbert, q(2), None)
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(h2.group.order(), Some(16));
    }

    #[test]
    fn signed_norms_structure_depends_on_minus_one() {
        // (-1, d) = -1 makes the trace-zero class of order 4.
        let f = q(3);
        let u = f.class_of(-1).unwrap();
        let g = LocalGroup::new(LocalGroupKind::SignedNorms, f, Some(u))
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(g.group.invariant_factors(), (0, vec![2, 2]));
        let g = LocalGroup::new(LocalGroupKind::SignedNorms, f, Some(f.class_of(3).unwrap()))
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(g.group.invariant_factors(), (0, vec![4]));
        let r = LocalGroup::new(
            LocalGroupKind::SignedNorms,
            LocalField::Real,
            Some(LocalField::Real.minus_one()),
        )
        .unwrap()
        .presentation()
        .unwrap();
        assert_eq!(r.group.invariant_factors(), (0, vec![4]));
    }

    #[test]
    fn coordinates_are_homomorphic() {
        let f = q(2);
        for kind in [LocalGroupKind::Squares, LocalGroupKind::Hilbert] {
            let m = LocalGroup::new(kind, f, None).unwrap();
            let p = m.presentation().unwrap();
            for a in m.elements() {
                for b in m.elements() {
                    let lhs = p.coords(&m.mul(&a, &b).unwrap()).unwrap();
                    let rhs = p.group.add(&p.coords(&a).unwrap(), &p.coords(&b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = q(5);
        let m =
            LocalGroup::new(LocalGroupKind::SignedNorms, f, Some(f.class_of(5).unwrap())).unwrap();
        for e in m.elements() {
            assert_eq!(m.elem_from_json(&m.elem_to_json(&e)).unwrap(), e);
        }
        let h = LocalGroup::new(LocalGroupKind::Hilbert, f, None).unwrap();
        for e in h.elements() {
            assert_eq!(h.elem_from_json(&h.elem_to_json(&e)).unwrap(), e);
        }
    }
}
