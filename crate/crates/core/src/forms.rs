//! Diagonal epsilon-Hermitian forms, their invariants and Witt decompositions.
//!
//! A [`FormType`] names the kind of space being classified (the "V side").  Its
//! coefficient system, as seen from the partner space, carries the opposite sign.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abgroups::{AbGroup, GroupElem, GroupHom, Subgroup};
use crate::classgroup::{LocalElem, LocalGroup, LocalGroupKind, Presented};
use crate::constants::{
    HYPERBOLIC_DIAG, QUATERNARY_ANISOTROPIC_SIGN, QUAT_SKEW_TERNARY_ANISOTROPIC_DISC,
    TERNARY_ISOTROPIC_SIGN,
};
use crate::error::{Error, Result};
use crate::localfield::{
    hilbert, CoefficientSystem, DivisionKind, HilElem, LocalField, SquareClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Symmetric,
    Symplectic,
    Hermitian,
    SkewHermitian,
    QuatHermitian,
    QuatSkewHermitian,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 6] = [
        SpaceKind::Symplectic,
        SpaceKind::QuatHermitian,
        SpaceKind::Hermitian,
        SpaceKind::SkewHermitian,
        SpaceKind::QuatSkewHermitian,
        SpaceKind::Symmetric,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::Symmetric => "symmetric",
            SpaceKind::Symplectic => "symplectic",
            SpaceKind::Hermitian => "hermitian",
            SpaceKind::SkewHermitian => "skew_hermitian",
            SpaceKind::QuatHermitian => "quat_hermitian",
            SpaceKind::QuatSkewHermitian => "quat_skew_hermitian",
        }
    }

    pub fn parse(s: &str) -> Result<SpaceKind> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        Ok(match t.as_str() {
            "symmetric" | "orthogonal" => SpaceKind::Symmetric,
            "symplectic" => SpaceKind::Symplectic,
            "hermitian" => SpaceKind::Hermitian,
            "skew_hermitian" | "skew" => SpaceKind::SkewHermitian,
            "quat_hermitian" => SpaceKind::QuatHermitian,
            "quat_skew_hermitian" | "quat_skew" => SpaceKind::QuatSkewHermitian,
            _ => return Err(Error::Parse(format!("unknown form type '{s}'"))),
        })
    }

    /// Sign of the form itself: `<u, v> = eps <v, u>^*`.
    pub fn epsilon(&self) -> i8 {
        match self {
            SpaceKind::Symmetric | SpaceKind::Hermitian | SpaceKind::QuatHermitian => 1,
            _ => -1,
        }
    }

    /// The kind with the same division algebra and the opposite sign.
    pub fn partner(&self) -> SpaceKind {
        match self {
            SpaceKind::Symmetric => SpaceKind::Symplectic,
            SpaceKind::Symplectic => SpaceKind::Symmetric,
            SpaceKind::Hermitian => SpaceKind::SkewHermitian,
            SpaceKind::SkewHermitian => SpaceKind::Hermitian,
            SpaceKind::QuatHermitian => SpaceKind::QuatSkewHermitian,
            SpaceKind::QuatSkewHermitian => SpaceKind::QuatHermitian,
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, SpaceKind::Hermitian | SpaceKind::SkewHermitian)
    }

    pub fn is_quaternionic(&self) -> bool {
        matches!(
            self,
            SpaceKind::QuatHermitian | SpaceKind::QuatSkewHermitian
        )
    }

    /// Largest dimension of an anisotropic space over a non-archimedean field.
    pub fn d_max(&self) -> i64 {
        match self {
            SpaceKind::Symplectic => 0,
            SpaceKind::QuatHermitian => 1,
            SpaceKind::Hermitian | SpaceKind::SkewHermitian => 2,
            SpaceKind::QuatSkewHermitian => 3,
            SpaceKind::Symmetric => 4,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How classes of a given type are parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Non-archimedean: dimension and discriminant in the finite group `Delta`.
    Witt,
    /// Real types classified by signature.
    Signature,
    /// Classified by dimension alone; anisotropic up to `max_anisotropic`.
    DimOnly { max_anisotropic: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormType {
    pub kind: SpaceKind,
    pub field: LocalField,
    /// Quadratic datum `d` with `E = F(sqrt d)`, for the (skew-)Hermitian kinds.
    pub ext: Option<SquareClass>,
}

impl FormType {
    pub fn new(kind: SpaceKind, field: LocalField, ext: Option<SquareClass>) -> Result<FormType> {
        let field = field.validated()?;
        match (kind.is_quadratic(), ext) {
            (true, None) => {
                return Err(Error::InvalidCoefficientSystem(format!(
                    "{kind} needs a quadratic datum d"
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidCoefficientSystem(format!(
                    "{kind} takes no quadratic datum"
                )))
            }
            _ => {}
        }
        let ty = FormType { kind, field, ext };
        // Validates field/division compatibility.
        ty.system()?;
        Ok(ty)
    }

    /// Parses a kind name, a field and an optional integer quadratic datum.
    pub fn parse(kind: &str, field: LocalField, d: Option<i64>) -> Result<FormType> {
        let kind = SpaceKind::parse(kind)?;
        let ext = match (kind.is_quadratic(), d) {
            (true, Some(d)) => Some(field.class_of(d)?),
            (true, None) if field == LocalField::Real => Some(field.minus_one()),
            (true, None) => {
                return Err(Error::InvalidCoefficientSystem(format!("{kind} needs --d")))
            }
            (false, _) => None,
        };
        FormType::new(kind, field, ext)
    }

    pub fn division(&self) -> DivisionKind {
        match self.ext {
            Some(d) => DivisionKind::Quadratic(d),
            None if self.kind.is_quaternionic() => DivisionKind::Quaternion,
            None => DivisionKind::Field,
        }
    }

    /// The coefficient system of the partner space: same division algebra, sign `-eps`.
    pub fn system(&self) -> Result<CoefficientSystem> {
        CoefficientSystem::new(self.field, self.division(), -self.kind.epsilon())
    }

    /// The type of spaces whose partner system is `cs`.
    pub fn from_system(cs: &CoefficientSystem) -> Result<FormType> {
        let kind = match (cs.division, -cs.epsilon) {
            (DivisionKind::Field, 1) => SpaceKind::Symmetric,
            (DivisionKind::Field, _) => SpaceKind::Symplectic,
            (DivisionKind::Quadratic(_), 1) => SpaceKind::Hermitian,
            (DivisionKind::Quadratic(_), _) => SpaceKind::SkewHermitian,
            (DivisionKind::Quaternion, 1) => SpaceKind::QuatHermitian,
            (DivisionKind::Quaternion, _) => SpaceKind::QuatSkewHermitian,
        };
        let ext = match cs.division {
            DivisionKind::Quadratic(d) => Some(d),
            _ => None,
        };
        FormType::new(kind, cs.field, ext)
    }

    /// The type with the same division algebra and opposite sign.
    pub fn partner(&self) -> FormType {
        FormType {
            kind: self.kind.partner(),
            ..*self
        }
    }

    pub fn d_max(&self) -> i64 {
        self.kind.d_max()
    }

    pub fn model(&self) -> Model {
        use SpaceKind::*;
        match (self.field, self.kind) {
            (LocalField::Padic { .. }, _) => Model::Witt,
            (_, Symplectic) => Model::DimOnly { max_anisotropic: 0 },
            (LocalField::Complex, _) => Model::DimOnly { max_anisotropic: 1 },
            (LocalField::Real, QuatSkewHermitian) => Model::DimOnly { max_anisotropic: 1 },
            (LocalField::Real, _) => Model::Signature,
        }
    }

    /// Dimensions of this type are multiples of this step.
    pub fn dim_step(&self) -> i64 {
        if self.kind == SpaceKind::Symplectic {
            2
        } else {
            1
        }
    }

    /// The discriminant group `Delta`.
    pub fn delta(&self) -> LocalGroup {
        let kind = match self.kind {
            SpaceKind::Symplectic | SpaceKind::QuatHermitian => LocalGroupKind::Trivial,
            SpaceKind::Symmetric => LocalGroupKind::Hilbert,
            SpaceKind::SkewHermitian => LocalGroupKind::SignedNorms,
            SpaceKind::Hermitian => LocalGroupKind::Norms,
            SpaceKind::QuatSkewHermitian => LocalGroupKind::Squares,
        };
        LocalGroup::new(kind, self.field, self.ext).expect("validated at construction")
    }

    /// Every type over `field`, one per quadratic datum for the (skew-)Hermitian kinds.
    pub fn all(field: LocalField) -> Vec<FormType> {
        let mut out = Vec::new();
        for kind in SpaceKind::ALL {
            if kind.is_quadratic() {
                for d in field.square_classes().into_iter().filter(|d| !d.is_one()) {
                    if let Ok(t) = FormType::new(kind, field, Some(d)) {
                        out.push(t);
                    }
                }
            } else if let Ok(t) = FormType::new(kind, field, None) {
                out.push(t);
            }
        }
        out
    }

    pub fn label(&self) -> String {
        match self.ext {
            Some(d) => format!("{}[d={}]/{}", self.kind, d.label(), self.field.name()),
            None => format!("{}/{}", self.kind, self.field.name()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "type": self.kind, "field": self.field });
        if let Some(d) = self.ext {
            v["d"] = d.to_json();
        }
        v
    }

    /// Reads `{"type":..,"field":..,"d":..}`; `field` may be given separately.
    pub fn from_json(v: &Value, field: Option<LocalField>) -> Result<FormType> {
        let field = match v.get("field") {
            Some(f) => serde_json::from_value::<LocalField>(f.clone())
                .map_err(|e| Error::Parse(format!("field: {e}")))?
                .validated()?,
            None => field.ok_or_else(|| Error::Parse("missing 'field'".into()))?,
        };
        let kind = SpaceKind::parse(
            v.get("type")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing 'type'".into()))?,
        )?;
        let ext = match v.get("d") {
            Some(d) if kind.is_quadratic() => Some(SquareClass::from_json(field, d)?),
            None if kind.is_quadratic() && field == LocalField::Real => Some(field.minus_one()),
            _ => None,
        };
        FormType::new(kind, field, ext)
    }

    fn minus_one_class(&self) -> SquareClass {
        self.field.minus_one()
    }
}

/// A diagonal form: integer Gram entries, or a bare dimension where entries carry
/// no invariant.
///
/// Entries are read through their classes: square classes (symmetric), norm classes
/// (Hermitian), `a` standing for `delta a` with `delta` a fixed trace-zero element
/// (skew-Hermitian), and reduced norms of trace-zero entries (quaternionic
/// skew-Hermitian).  Quaternionic Hermitian entries matter only through their signs over R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    pub ty: FormType,
    pub diag: Option<Vec<i64>>,
    pub dim: i64,
}

impl FormSpec {
    pub fn diagonal(ty: FormType, diag: Vec<i64>) -> Result<FormSpec> {
        if ty.kind == SpaceKind::Symplectic {
            return Err(Error::InvalidForm(
                "symplectic forms are given by dimension".into(),
            ));
        }
        if let Some(pos) = diag.iter().position(|&a| a == 0) {
            return Err(Error::InvalidForm(format!("entry {pos} is zero")));
        }
        if ty.kind == SpaceKind::QuatSkewHermitian {
            for (pos, &a) in diag.iter().enumerate() {
                if ty.field.class_of(a)? == ty.minus_one_class() {
                    return Err(Error::InvalidForm(format!(
                        "entry {pos}: no trace-zero quaternion has reduced norm in the class of -1"
                    )));
                }
            }
        }
        let dim = diag.len() as i64;
        Ok(FormSpec {
            ty,
            diag: Some(diag),
            dim,
        })
    }

    pub fn of_dim(ty: FormType, dim: i64) -> Result<FormSpec> {
        if dim < 0 {
            return Err(Error::InvalidForm("negative dimension".into()));
        }
        if dim % ty.dim_step() != 0 {
            return Err(Error::InvalidForm(format!(
                "{} dimension must be even",
                ty.kind
            )));
        }
        let carries_no_invariant = ty.kind == SpaceKind::Symplectic
            || matches!(ty.model(), Model::DimOnly { .. })
            || (ty.kind == SpaceKind::QuatHermitian && ty.model() == Model::Witt);
        if !carries_no_invariant {
            return Err(Error::InvalidForm(format!(
                "{} forms over {} need diagonal entries",
                ty.kind,
                ty.field.name()
            )));
        }
        Ok(FormSpec {
            ty,
            diag: None,
            dim,
        })
    }

    /// Reads `{"field":..,"type":..,"d":..,"diag":[..]}` or `{..,"dim":n}`.
    pub fn from_json(v: &Value) -> Result<FormSpec> {
        let ty = FormType::from_json(v, None)?;
        FormSpec::from_json_with_type(ty, v)
    }

    pub fn from_json_with_type(ty: FormType, v: &Value) -> Result<FormSpec> {
        match (v.get("diag"), v.get("dim")) {
            (Some(d), _) => {
                let arr = d
                    .as_array()
                    .ok_or_else(|| Error::Parse("'diag' must be an array".into()))?;
                let diag = arr
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        x.as_i64()
                            .ok_or_else(|| Error::Parse(format!("diag[{i}] is not an integer")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                FormSpec::diagonal(ty, diag)
            }
            (None, Some(n)) => FormSpec::of_dim(
                ty,
                n.as_i64()
                    .ok_or_else(|| Error::Parse("'dim' must be an integer".into()))?,
            ),
            (None, None) => Err(Error::Parse("form needs 'diag' or 'dim'".into())),
        }
    }

    /// The class of each entry, as echoed back to the caller.
    pub fn reduced_entries(&self) -> Result<Vec<Value>> {
        let delta = self.ty.delta();
        match &self.diag {
            None => Ok(vec![]),
            Some(diag) => diag
                .iter()
                .map(|&a| {
                    let e = entry_disc(&self.ty, a)?;
                    Ok(json!({ "entry": a, "class": self.ty.field.class_of(a)?.to_json(), "disc": delta.elem_to_json(&e) }))
                })
                .collect(),
        }
    }
}

/// Discriminant contribution of a single diagonal entry.
fn entry_disc(ty: &FormType, a: i64) -> Result<LocalElem> {
    let f = ty.field;
    let c = f.class_of(a)?;
    Ok(match ty.kind {
        SpaceKind::Symplectic | SpaceKind::QuatHermitian => LocalElem::Trivial,
        SpaceKind::Symmetric => LocalElem::Hil(HilElem { sq: c, sign: 1 }),
        SpaceKind::Hermitian => LocalElem::Norm(hilbert(c, ty.ext.expect("quadratic"))),
        SpaceKind::SkewHermitian => LocalElem::Signed {
            side: 1,
            norm: hilbert(c, ty.ext.expect("quadratic")),
        },
        SpaceKind::QuatSkewHermitian => match ty.model() {
            Model::Witt => LocalElem::Square(c),
            _ => LocalElem::Square(f.one()),
        },
    })
}

/// An element of the Witt-Grothendieck group of a type: dimension, discriminant and,
/// for the real signature model, the number of negative entries.
///
/// Classes of actual spaces have `dim >= 0` and nonnegative split rank (see
/// [`in_monoid`]); formal differences are allowed so that `c - H` always makes sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceClass {
    pub ty: FormType,
    pub dim: i64,
    pub disc: LocalElem,
    pub neg: i64,
}

impl SpaceClass {
    /// Checks the ambient constraints: discriminant in `Delta`, even symplectic
    /// dimension, skew-Hermitian side matching the dimension parity, and for real
    /// signature types a discriminant consistent with the signature.
    pub fn new(ty: FormType, dim: i64, disc: LocalElem, neg: i64) -> Result<SpaceClass> {
        let delta = ty.delta();
        if !delta.contains(&disc) {
            return Err(Error::InvalidClass(format!(
                "{disc:?} is not in the discriminant group of {}",
                ty.label()
            )));
        }
        if dim % ty.dim_step() != 0 {
            return Err(Error::InvalidClass(
                "symplectic dimension must be even".into(),
            ));
        }
        if let LocalElem::Signed { side, .. } = disc {
            if side as i64 != dim.rem_euclid(2) {
                return Err(Error::InvalidClass(
                    "skew-Hermitian side must match the dimension parity".into(),
                ));
            }
        }
        match ty.model() {
            Model::Signature => {
                let expected = signature_disc(&ty, dim - neg, neg)?;
                if expected != disc {
                    return Err(Error::InvalidClass(
                        "discriminant does not match the signature".into(),
                    ));
                }
            }
            _ if neg != 0 => {
                return Err(Error::InvalidClass(format!(
                    "{} has no signature",
                    ty.label()
                )))
            }
            Model::DimOnly { .. } if disc != delta.identity() => {
                return Err(Error::InvalidClass(format!(
                    "{} is classified by dimension alone",
                    ty.label()
                )))
            }
            _ => {}
        }
        Ok(SpaceClass { ty, dim, disc, neg })
    }

    pub fn zero(ty: FormType) -> SpaceClass {
        SpaceClass {
            ty,
            dim: 0,
            disc: ty.delta().identity(),
            neg: 0,
        }
    }

    /// Real signature model: the class with `pos` positive and `neg` negative entries.
    pub fn from_signature(ty: FormType, pos: i64, neg: i64) -> Result<SpaceClass> {
        if ty.model() != Model::Signature {
            return Err(Error::NotApplicable(format!(
                "{} is not classified by signature",
                ty.label()
            )));
        }
        SpaceClass::new(ty, pos + neg, signature_disc(&ty, pos, neg)?, neg)
    }

    /// Classes determined by dimension alone (symplectic, and the dimension-only real and complex types).
    pub fn from_dim(ty: FormType, dim: i64) -> Result<SpaceClass> {
        match ty.model() {
            Model::DimOnly { .. } => SpaceClass::new(ty, dim, ty.delta().identity(), 0),
            _ if ty.delta().kind == LocalGroupKind::Trivial => {
                SpaceClass::new(ty, dim, LocalElem::Trivial, 0)
            }
            _ => Err(Error::NotApplicable(format!(
                "{} is not classified by dimension alone",
                ty.label()
            ))),
        }
    }

    pub fn pos(&self) -> i64 {
        self.dim - self.neg
    }

    /// Hasse invariant, for the symmetric type.
    pub fn hass(&self) -> Option<i8> {
        match self.disc {
            LocalElem::Hil(h) => Some(h.sign),
            _ => None,
        }
    }

    fn check_same(&self, other: &SpaceClass) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::TypeMismatch(format!(
                "{} vs {}",
                self.ty.label(),
                other.ty.label()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SpaceClass) -> Result<SpaceClass> {
        self.check_same(other)?;
        let disc = self.ty.delta().mul(&self.disc, &other.disc)?;
        Ok(SpaceClass {
            ty: self.ty,
            dim: self.dim + other.dim,
            disc,
            neg: self.neg + other.neg,
        })
    }

    pub fn neg(&self) -> Result<SpaceClass> {
        let disc = self.ty.delta().inverse(&self.disc)?;
        Ok(SpaceClass {
            ty: self.ty,
            dim: -self.dim,
            disc,
            neg: -self.neg,
        })
    }

    pub fn sub(&self, other: &SpaceClass) -> Result<SpaceClass> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: i64) -> Result<SpaceClass> {
        let base = if k < 0 { self.neg()? } else { *self };
        let mut acc = SpaceClass::zero(self.ty);
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base)?;
        }
        Ok(acc)
    }

    pub fn disc_label(&self) -> String {
        self.ty.delta().label(&self.disc)
    }

    pub fn to_json(&self) -> Value {
        let delta = self.ty.delta();
        let mut v = self.ty.to_json();
        v["dim"] = json!(self.dim);
        match self.disc {
            LocalElem::Hil(h) => {
                v["disc"] = h.sq.to_json();
                v["hass"] = json!(h.sign);
            }
            e => v["disc"] = delta.elem_to_json(&e),
        }
        v["disc_label"] = json!(self.disc_label());
        if self.ty.model() == Model::Signature {
            v["signature"] = json!([self.pos(), self.neg]);
        }
        v
    }

    /// Reads the output of [`SpaceClass::to_json`] (type fields may be omitted when
    /// `ty` is given); `signature` alone suffices for real signature types.
    pub fn from_json(v: &Value, ty: Option<FormType>) -> Result<SpaceClass> {
        let ty = match ty {
            Some(t) => t,
            None => FormType::from_json(v, None)?,
        };
        if let Some(sig) = v.get("signature") {
            let pair = sig
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_i64()?, a[1].as_i64()?)))
                .ok_or_else(|| Error::Parse("'signature' must be [pos, neg]".into()))?;
            return SpaceClass::from_signature(ty, pair.0, pair.1);
        }
        let dim = v
            .get("dim")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("class needs 'dim'".into()))?;
        let delta = ty.delta();
        let disc = match (ty.kind, v.get("disc")) {
            (_, None) => delta.identity(),
            (SpaceKind::Symmetric, Some(d)) if v.get("hass").is_some() => {
                let hass = match v.get("hass").and_then(Value::as_i64) {
                    Some(1) => 1,
                    Some(-1) => -1,
                    _ => return Err(Error::Parse("'hass' must be 1 or -1".into())),
                };
                LocalElem::Hil(HilElem {
                    sq: SquareClass::from_json(ty.field, d)?,
                    sign: hass,
                })
            }
            (_, Some(d)) => delta.elem_from_json(d)?,
        };
        SpaceClass::new(ty, dim, disc, 0)
    }
}

/// Discriminant of `pos <1> + neg <-1>` as a formal combination.
fn signature_disc(ty: &FormType, pos: i64, neg: i64) -> Result<LocalElem> {
    let delta = ty.delta();
    let plus = entry_disc(ty, 1)?;
    let minus = entry_disc(ty, -1)?;
    delta.mul(&delta.pow(&plus, pos)?, &delta.pow(&minus, neg)?)
}

/// Invariants of a diagonal form.
pub fn invariants(spec: &FormSpec) -> Result<SpaceClass> {
    let ty = spec.ty;
    let delta = ty.delta();
    match &spec.diag {
        None => SpaceClass::from_dim(ty, spec.dim)
            .or_else(|_| SpaceClass::new(ty, spec.dim, delta.identity(), 0)),
        Some(diag) => {
            let mut disc = delta.identity();
            for &a in diag {
                disc = delta.mul(&disc, &entry_disc(&ty, a)?)?;
            }
            let neg = match ty.model() {
                Model::Signature => diag.iter().filter(|&&a| a < 0).count() as i64,
                _ => 0,
            };
            SpaceClass::new(ty, diag.len() as i64, disc, neg)
        }
    }
}

pub fn class_add(a: &SpaceClass, b: &SpaceClass) -> Result<SpaceClass> {
    a.add(b)
}

/// The hyperbolic plane.
pub fn hyperbolic_plane(ty: FormType) -> SpaceClass {
    let spec = match (ty.kind, ty.model()) {
        (SpaceKind::Symplectic, _) | (_, Model::DimOnly { .. }) => FormSpec {
            ty,
            diag: None,
            dim: 2,
        },
        // <delta, -delta> for any trace-zero delta: both entries carry Nrd(delta), and
        // every class except that of -1 is such a norm.
        (SpaceKind::QuatSkewHermitian, _) => {
            let c = ty
                .field
                .square_classes()
                .into_iter()
                .find(|c| *c != ty.minus_one_class())
                .expect("two classes");
            let norms = HYPERBOLIC_DIAG
                .iter()
                .map(|a| a * a * c.representative())
                .collect();
            FormSpec {
                ty,
                diag: Some(norms),
                dim: 2,
            }
        }
        (SpaceKind::QuatHermitian, Model::Witt) => FormSpec {
            ty,
            diag: None,
            dim: 2,
        },
        _ => FormSpec {
            ty,
            diag: Some(HYPERBOLIC_DIAG.to_vec()),
            dim: 2,
        },
    };
    invariants(&spec).expect("hyperbolic representative is valid")
}

pub fn d_max(ty: FormType) -> i64 {
    ty.d_max()
}

/// Low-dimensional realizability conditions on `(dim, disc)`.
fn realizable_small(c: &SpaceClass) -> bool {
    let delta = c.ty.delta();
    match c.dim {
        0 => c.disc == delta.identity() && c.neg == 0,
        1 => match (c.ty.kind, c.disc) {
            (SpaceKind::Symmetric, LocalElem::Hil(h)) => h.sign == 1,
            (SpaceKind::QuatSkewHermitian, LocalElem::Square(s)) => s != c.ty.minus_one_class(),
            _ => true,
        },
        _ => true,
    }
}

/// Anisotropy of a class of dimension `0..=d_max` over a non-archimedean field that
/// passes [`realizable_small`].
fn witt_rule_anisotropic(c: &SpaceClass) -> bool {
    let ty = c.ty;
    let f = ty.field;
    let m1 = f.minus_one();
    match c.dim {
        0 | 1 => return c.dim <= ty.d_max(),
        n if n > ty.d_max() => return false,
        _ => {}
    }
    match (ty.kind, c.disc) {
        (SpaceKind::Symmetric, LocalElem::Hil(h)) => {
            let d = h.sq;
            match c.dim {
                2 => d != m1,
                3 => h.sign != TERNARY_ISOTROPIC_SIGN * hilbert(m1, d.mul(&m1)),
                _ => d.is_one() && h.sign == QUATERNARY_ANISOTROPIC_SIGN * hilbert(m1, m1),
            }
        }
        (SpaceKind::Hermitian | SpaceKind::SkewHermitian, disc) => {
            disc != hyperbolic_plane(ty).disc
        }
        (SpaceKind::QuatSkewHermitian, LocalElem::Square(s)) => match c.dim {
            2 => !s.is_one(),
            _ => {
                s == f
                    .class_of(QUAT_SKEW_TERNARY_ANISOTROPIC_DISC)
                    .expect("nonzero")
            }
        },
        _ => false,
    }
}

/// Anisotropic classes.  For the real signature model the list is infinite and is
/// cut off at `bound` in dimension.
pub fn anisotropic_classes(ty: FormType, bound: Option<i64>) -> Result<Vec<SpaceClass>> {
    let delta = ty.delta();
    match ty.model() {
        Model::Witt => {
            let mut out = Vec::new();
            for dim in (0..=ty.d_max()).filter(|n| n % ty.dim_step() == 0) {
                for disc in delta.elements() {
                    let Ok(c) = SpaceClass::new(ty, dim, disc, 0) else {
                        continue;
                    };
                    if realizable_small(&c) && witt_rule_anisotropic(&c) {
                        out.push(c);
                    }
                }
            }
            Ok(out)
        }
        Model::DimOnly { max_anisotropic } => (0..=max_anisotropic)
            .filter(|n| n % ty.dim_step() == 0)
            .map(|n| SpaceClass::from_dim(ty, n))
            .collect(),
        Model::Signature => {
            let b = bound.ok_or_else(|| {
                Error::NotApplicable(format!(
                    "{} has infinitely many anisotropic classes; give a bound",
                    ty.label()
                ))
            })?;
            let mut out = vec![SpaceClass::zero(ty)];
            for n in 1..=b {
                out.push(SpaceClass::from_signature(ty, n, 0)?);
                out.push(SpaceClass::from_signature(ty, 0, n)?);
            }
            Ok(out)
        }
    }
}

/// Witt decomposition `c = kernel + r H` of an element of the ambient group.
/// Fails only for elements outside the Witt-Grothendieck group.
pub fn witt_decompose(c: &SpaceClass) -> Result<(SpaceClass, i64)> {
    let ty = c.ty;
    let h = hyperbolic_plane(ty);
    match ty.model() {
        Model::Signature => {
            let r = c.pos().min(c.neg);
            Ok((c.sub(&h.scale(r)?)?, r))
        }
        Model::DimOnly { max_anisotropic } => {
            let r = if max_anisotropic == 0 {
                c.dim / 2
            } else {
                c.dim.div_euclid(2)
            };
            Ok((c.sub(&h.scale(r)?)?, r))
        }
        Model::Witt => {
            for c0 in anisotropic_classes(ty, None)? {
                let diff = c.sub(&c0)?;
                if diff.dim % 2 != 0 {
                    continue;
                }
                let r = diff.dim / 2;
                if h.scale(r)? == diff {
                    return Ok((c0, r));
                }
            }
            Err(Error::InvalidClass(format!(
                "dim {} disc {} is not in the Witt-Grothendieck group of {}",
                c.dim,
                c.disc_label(),
                ty.label()
            )))
        }
    }
}

/// Split rank; negative for formal differences that are not actual spaces.
pub fn split_rank(c: &SpaceClass) -> Result<i64> {
    Ok(witt_decompose(c)?.1)
}

pub fn anisotropic_kernel(c: &SpaceClass) -> Result<SpaceClass> {
    Ok(witt_decompose(c)?.0)
}

/// Whether `c` is the class of an actual space.
pub fn in_monoid(c: &SpaceClass) -> bool {
    c.dim >= 0
        && c.neg >= 0
        && c.pos() >= 0
        && witt_decompose(c).map(|(_, r)| r >= 0).unwrap_or(false)
}

pub fn is_anisotropic(c: &SpaceClass) -> Result<bool> {
    if !in_monoid(c) {
        return Err(Error::InvalidClass(format!(
            "dim {} disc {} is not the class of a space",
            c.dim,
            c.disc_label()
        )));
    }
    Ok(split_rank(c)? == 0)
}

/// The unique anisotropic class of dimension `d_max` (non-archimedean), or of maximal
/// anisotropic dimension for the dimension-only models.
pub fn v_circle(ty: FormType) -> Result<SpaceClass> {
    let top = match ty.model() {
        Model::Witt => ty.d_max(),
        Model::DimOnly { max_anisotropic } => max_anisotropic,
        Model::Signature => {
            return Err(Error::NotApplicable(format!(
                "{} has anisotropic classes of every dimension",
                ty.label()
            )))
        }
    };
    let found: Vec<SpaceClass> = anisotropic_classes(ty, None)?
        .into_iter()
        .filter(|c| c.dim == top)
        .collect();
    match found.as_slice() {
        [c] => Ok(*c),
        _ => Err(Error::Inconsistent(format!(
            "{} anisotropic classes of dimension {top} for {}",
            found.len(),
            ty.label()
        ))),
    }
}

/// The Witt-Grothendieck group as an abelian group with coordinate maps.
#[derive(Clone, Debug)]
pub struct W0Model {
    pub ty: FormType,
    pub group: AbGroup,
    ambient: AbGroup,
    delta: Option<Presented>,
    fibre: Option<Subgroup>,
}

impl W0Model {
    pub fn new(ty: FormType) -> Result<W0Model> {
        match ty.model() {
            Model::Witt => {
                let delta = ty.delta().presentation()?;
                let z = AbGroup::new(
                    vec![0],
                    vec![if ty.dim_step() == 2 {
                        "H".into()
                    } else {
                        "dim".into()
                    }],
                )?;
                let ambient = z.product(&delta.group);
                let fibre = if ty.kind == SpaceKind::SkewHermitian {
                    let z2 = AbGroup::cyclic(2, "parity");
                    let f = GroupHom::new(z.clone(), z2.clone(), vec![vec![1]])?;
                    let sides: Vec<GroupElem> = (0..delta.group.ngens())
                        .map(|i| match delta.elem(&delta.group.generator(i)) {
                            LocalElem::Signed { side, .. } => GroupElem(vec![side as i64]),
                            _ => GroupElem(vec![0]),
                        })
                        .collect();
                    let g = GroupHom::from_images(delta.group.clone(), z2, &sides)?;
                    let (_, sub) = crate::abgroups::fiber_product_z2(&f, &g)?;
                    Some(sub)
                } else {
                    None
                };
                let group = fibre
                    .as_ref()
                    .map(|s| s.group.clone())
                    .unwrap_or_else(|| ambient.clone());
                Ok(W0Model {
                    ty,
                    group,
                    ambient,
                    delta: Some(delta),
                    fibre,
                })
            }
            Model::Signature => {
                let group = AbGroup::new(vec![0, 0], vec!["<+1>".into(), "<-1>".into()])?;
                Ok(W0Model {
                    ty,
                    group: group.clone(),
                    ambient: group,
                    delta: None,
                    fibre: None,
                })
            }
            Model::DimOnly { .. } => {
                let label = if ty.dim_step() == 2 { "H" } else { "dim" };
                let group = AbGroup::new(vec![0], vec![label.into()])?;
                Ok(W0Model {
                    ty,
                    group: group.clone(),
                    ambient: group,
                    delta: None,
                    fibre: None,
                })
            }
        }
    }

    pub fn coords(&self, c: &SpaceClass) -> Result<GroupElem> {
        if c.ty != self.ty {
            return Err(Error::TypeMismatch(format!(
                "{} vs {}",
                c.ty.label(),
                self.ty.label()
            )));
        }
        match self.ty.model() {
            Model::Signature => Ok(GroupElem(vec![c.pos(), c.neg])),
            Model::DimOnly { .. } => Ok(GroupElem(vec![c.dim / self.ty.dim_step()])),
            Model::Witt => {
                let delta = self.delta.as_ref().expect("Witt model has a presentation");
                let mut v = vec![c.dim / self.ty.dim_step()];
                v.extend(delta.coords(&c.disc)?.0);
                let amb = self.ambient.normalize(&v);
                match &self.fibre {
                    None => Ok(amb),
                    Some(sub) => sub
                        .preimage(&amb)
                        .ok_or_else(|| Error::InvalidClass("side does not match parity".into())),
                }
            }
        }
    }

    pub fn class(&self, x: &GroupElem) -> Result<SpaceClass> {
        let x = self.group.normalize(&x.0);
        match self.ty.model() {
            Model::Signature => SpaceClass::from_signature(self.ty, x.0[0], x.0[1]),
            Model::DimOnly { .. } => SpaceClass::from_dim(self.ty, x.0[0] * self.ty.dim_step()),
            Model::Witt => {
                let amb = match &self.fibre {
                    None => x,
                    Some(sub) => sub.embed.apply(&x),
                };
                let delta = self.delta.as_ref().expect("Witt model has a presentation");
                let disc = delta.elem(&GroupElem(amb.0[1..].to_vec()));
                SpaceClass::new(self.ty, amb.0[0] * self.ty.dim_step(), disc, 0)
            }
        }
    }

    /// The dimension homomorphism to `Z`.
    pub fn dim_hom(&self) -> Result<GroupHom> {
        let images: Vec<GroupElem> = (0..self.group.ngens())
            .map(|i| {
                self.class(&self.group.generator(i))
                    .map(|c| GroupElem(vec![c.dim]))
            })
            .collect::<Result<_>>()?;
        GroupHom::from_images(
            self.group.clone(),
            AbGroup::new(vec![0], vec!["dim".into()])?,
            &images,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn q(p: u64) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    fn sym(f: LocalField) -> FormType {
        FormType::new(SpaceKind::Symmetric, f, None).unwrap()
    }

    fn cls(ty: FormType, diag: &[i64]) -> SpaceClass {
        invariants(&FormSpec::diagonal(ty, diag.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn symmetric_invariants() {
        let c = cls(sym(q(3)), &[1, -1]);
        assert_eq!(c.dim, 2);
        assert_eq!(
            c.disc,
            LocalElem::Hil(HilElem {
                sq: q(3).minus_one(),
                sign: 1
            })
        );
        assert_eq!(c, hyperbolic_plane(sym(q(3))));
    }

    #[test]
    fn hasse_twist_under_addition() {
        let f = q(3);
        let h = cls(sym(f), &[1, -1]);
        let s = h.add(&h).unwrap();
        assert_eq!(s.dim, 4);
        let hil = match s.disc {
            LocalElem::Hil(x) => x,
            _ => unreachable!(),
        };
        assert!(hil.sq.is_one());
        assert_eq!(hil.sign, f.hilbert(-1, -1).unwrap());
        assert_eq!(s, cls(sym(f), &[1, -1, 1, -1]));
    }

    #[test]
    fn hermitian_parity_bookkeeping() {
        let f = q(3);
        let skew = FormType::parse("skew_hermitian", f, Some(-1)).unwrap();
        let a = cls(skew, &[1]);
        assert!(matches!(a.disc, LocalElem::Signed { side: 1, .. }));
        assert!(matches!(
            a.add(&a).unwrap().disc,
            LocalElem::Signed { side: 0, .. }
        ));
        let herm = FormType::parse("hermitian", f, Some(-1)).unwrap();
        assert_eq!(
            cls(herm, &[1, -1]).disc,
            LocalElem::Norm(hilbert(f.minus_one(), f.minus_one()))
        );
    }

    #[test]
    fn quat_skew_rejects_minus_one_entries() {
        let t = FormType::new(SpaceKind::QuatSkewHermitian, q(3), None).unwrap();
        assert!(FormSpec::diagonal(t, vec![-1]).is_err());
        assert!(FormSpec::diagonal(t, vec![1]).is_ok());
        // -1 is a square in Q_5, so no entry has trivial reduced norm there.
        let t5 = FormType::new(SpaceKind::QuatSkewHermitian, q(5), None).unwrap();
        assert!(FormSpec::diagonal(t5, vec![1]).is_err());
        let bad = SpaceClass::new(t5, 1, LocalElem::Square(q(5).one()), 0).unwrap();
        assert!(!in_monoid(&bad));
        assert_eq!(hyperbolic_plane(t5).disc, LocalElem::Square(q(5).one()));
    }

    #[test]
    fn symmetric_line_with_minus_hasse_is_not_a_space() {
        let f = q(3);
        let u = f.class_of(2).unwrap();
        let c = SpaceClass::new(sym(f), 1, LocalElem::Hil(HilElem { sq: u, sign: -1 }), 0).unwrap();
        assert!(!in_monoid(&c));
        assert!(is_anisotropic(&c).is_err());
    }

    #[test]
    fn anisotropic_counts() {
        for p in [2u64, 3, 5, 7] {
            let f = q(p);
            for ty in FormType::all(f) {
                let n = anisotropic_classes(ty, None).unwrap().len();
                let expected = match ty.kind {
                    SpaceKind::Symmetric => {
                        if p == 2 {
                            32
                        } else {
                            16
                        }
                    }
                    SpaceKind::Symplectic => 1,
                    SpaceKind::QuatHermitian => 2,
                    SpaceKind::Hermitian | SpaceKind::SkewHermitian => 4,
                    SpaceKind::QuatSkewHermitian => {
                        if p == 2 {
                            16
                        } else {
                            8
                        }
                    }
                };
                assert_eq!(n, expected, "{}", ty.label());
                let top: Vec<_> = anisotropic_classes(ty, None)
                    .unwrap()
                    .into_iter()
                    .filter(|c| c.dim == ty.d_max())
                    .collect();
                assert_eq!(top.len(), 1, "{}", ty.label());
                v_circle(ty).unwrap();
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let f = q(3);
        let h = hyperbolic_plane(sym(f));
        assert_eq!(witt_decompose(&h).unwrap(), (SpaceClass::zero(sym(f)), 1));
        let c = cls(sym(f), &[1, -1, 1, -1]);
        assert_eq!(split_rank(&c).unwrap(), 2);
        assert_eq!(anisotropic_kernel(&c).unwrap().dim, 0);
        // The Hasse sign of dim-2 discriminant -1 that no binary form realizes sits at rank -1.
        let ghost = SpaceClass::new(
            sym(f),
            2,
            LocalElem::Hil(HilElem {
                sq: f.minus_one(),
                sign: -1,
            }),
            0,
        )
        .unwrap();
        assert_eq!(split_rank(&ghost).unwrap(), -1);
        assert!(!in_monoid(&ghost));
    }

    #[test]
    fn invariants_additive_exhaustive() {
        for p in [3u64, 5] {
            let f = q(p);
            let reps: Vec<i64> = f
                .square_classes()
                .iter()
                .map(SquareClass::representative)
                .collect();
            let ty = sym(f);
            let mut diags: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..3 {
                let next: Vec<Vec<i64>> = diags
                    .iter()
                    .flat_map(|d| reps.iter().map(move |&r| [d.clone(), vec![r]].concat()))
                    .collect();
                diags.extend(next.into_iter().filter(|d| d.len() <= 3));
                diags.sort();
                diags.dedup();
            }
            let of = |d: &[i64]| {
                if d.is_empty() {
                    SpaceClass::zero(ty)
                } else {
                    cls(ty, d)
                }
            };
            for a in &diags {
                for b in &diags {
                    if a.len() + b.len() > 5 {
                        continue;
                    }
                    let joined = [a.clone(), b.clone()].concat();
                    assert_eq!(of(a).add(&of(b)).unwrap(), of(&joined));
                    let mut rev = joined.clone();
                    rev.reverse();
                    assert_eq!(of(&rev), of(&joined));
                }
            }
        }
    }

    #[test]
    fn hermitian_rules_match_trace_forms() {
        for p in [2u64, 3, 5] {
            let f = q(p);
            let reps: Vec<i64> = f
                .square_classes()
                .iter()
                .map(SquareClass::representative)
                .collect();
            for &d in reps.iter().filter(|&&r| r != 1) {
                for kind in ["hermitian", "skew_hermitian"] {
                    let ty = FormType::parse(kind, f, Some(d)).unwrap();
                    for &a in &reps {
                        for &b in &reps {
                            let c = cls(ty, &[a, b]);
                            // delta <a, b> is isotropic iff <a, b> is.
                            let iso = oracle::quadratic_isotropic(
                                f,
                                &oracle::hermitian_trace_form(&[a, b], d),
                            )
                            .unwrap();
                            assert_eq!(
                                is_anisotropic(&c).unwrap(),
                                !iso,
                                "{} <{a},{b}>",
                                ty.label()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn real_signature_model() {
        let ty = sym(LocalField::Real);
        let c = cls(ty, &[1, 1, -1]);
        assert_eq!((c.pos(), c.neg), (2, 1));
        assert_eq!(split_rank(&c).unwrap(), 1);
        assert_eq!(anisotropic_kernel(&c).unwrap(), cls(ty, &[1]));
        assert!(is_anisotropic(&cls(ty, &[-1, -1, -1])).unwrap());
        let herm = FormType::parse("hermitian", LocalField::Real, None).unwrap();
        assert_eq!(split_rank(&cls(herm, &[1, -1, -1])).unwrap(), 1);
    }

    #[test]
    fn w0_model_round_trip() {
        for f in [q(2), q(3), LocalField::Real, LocalField::Complex] {
            for ty in FormType::all(f) {
                let m = W0Model::new(ty).unwrap();
                let mut samples = anisotropic_classes(ty, Some(3)).unwrap();
                samples.push(hyperbolic_plane(ty));
                for c in samples {
                    let x = m.coords(&c).unwrap();
                    assert_eq!(m.class(&x).unwrap(), c, "{}", ty.label());
                    let y = m.coords(&c.add(&hyperbolic_plane(ty)).unwrap()).unwrap();
                    assert_eq!(
                        m.group.sub(&y, &x),
                        m.coords(&hyperbolic_plane(ty)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let ty = FormType::parse("skew_hermitian", q(5), Some(2)).unwrap();
        let c = cls(ty, &[1, 5, 2]);
        assert_eq!(SpaceClass::from_json(&c.to_json(), None).unwrap(), c);
        let s = cls(sym(q(3)), &[1, 3, 3]);
        assert_eq!(SpaceClass::from_json(&s.to_json(), None).unwrap(), s);
        let spec = FormSpec::from_json(
            &json!({"field":{"kind":"padic","p":3},"type":"symmetric","diag":[1,-1,3]}),
        )
        .unwrap();
        assert_eq!(invariants(&spec).unwrap().dim, 3);
        assert!(FormSpec::from_json(
            &json!({"field":{"kind":"padic","p":3},"type":"symmetric","diag":[1,0]})
        )
        .is_err());
        let sp = FormSpec::from_json(&json!({"field":{"kind":"real"},"type":"symplectic","dim":4}))
            .unwrap();
        assert_eq!(split_rank(&invariants(&sp).unwrap()).unwrap(), 2);
    }
}
