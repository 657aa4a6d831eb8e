//! Weil indices, the groups `W_inf` with their Kudla homomorphism, anti-split towers
//! and the exact sequence for `CW_U`.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::abgroups::{AbGroup, GroupElem, GroupHom, Quotient, Subgroup};
use crate::classgroup::{LocalElem, LocalGroup, LocalGroupKind, Presented};
use crate::constants::WEIL_INDEX;
use crate::error::{Error, Result};
use crate::forms::{hyperbolic_plane, FormType, Model, SpaceClass, SpaceKind, W0Model};
use crate::localfield::{
    hil_elements, hilbert, CoefficientSystem, DivisionKind, HilElem, LocalField, SquareClass,
};
use crate::witt::{tower_group, tower_of, WittTower};

/// An eighth root of unity `exp(2 pi i e / 8)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mu8(u8);

impl Mu8 {
    pub const ONE: Mu8 = Mu8(0);

    pub fn new(e: i64) -> Mu8 {
        Mu8(e.rem_euclid(8) as u8)
    }

    pub fn sign(s: i8) -> Mu8 {
        if s < 0 {
            Mu8(4)
        } else {
            Mu8(0)
        }
    }

    pub fn exponent(&self) -> u8 {
        self.0
    }

    pub fn mul(&self, o: &Mu8) -> Mu8 {
        Mu8::new(self.0 as i64 + o.0 as i64)
    }

    pub fn inv(&self) -> Mu8 {
        Mu8::new(-(self.0 as i64))
    }

    pub fn div(&self, o: &Mu8) -> Mu8 {
        self.mul(&o.inv())
    }

    pub fn to_json(&self) -> Value {
        json!({ "exponent": self.0, "value": self.to_string() })
    }
}

impl fmt::Display for Mu8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "1",
            2 => "i",
            4 => "-1",
            6 => "-i",
            1 => "exp(i pi/4)",
            3 => "exp(3 i pi/4)",
            5 => "exp(5 i pi/4)",
            _ => "exp(7 i pi/4)",
        };
        f.write_str(s)
    }
}

/// The additive character `x -> psi(scale x)`, with `psi` the standard character
/// (`exp(2 pi i {x}_p)` on `Q_p`, `exp(2 pi i x)` on R).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PsiConvention {
    pub field: LocalField,
    pub scale: SquareClass,
}

impl PsiConvention {
    pub fn standard(field: LocalField) -> PsiConvention {
        PsiConvention {
            field,
            scale: field.one(),
        }
    }

    pub fn with_scale(field: LocalField, a: i64) -> Result<PsiConvention> {
        Ok(PsiConvention {
            field,
            scale: field.class_of(a)?,
        })
    }

    /// `x -> psi(alpha x)`.
    pub fn rescaled(&self, alpha: SquareClass) -> PsiConvention {
        PsiConvention {
            field: self.field,
            scale: self.scale.mul(&alpha),
        }
    }
}

/// Frozen Weil indices `gamma(x -> psi(a x^2))` of the standard character, one per square class.
#[derive(Clone, Debug)]
pub struct WeilTable {
    pub field: LocalField,
    index: HashMap<SquareClass, Mu8>,
}

impl WeilTable {
    /// Loads the table for `field` and asserts the cocycle identity
    /// `g(a) g(b) = g(ab) (a,b)` for the normalized index `g(a) = gamma(psi_a)/gamma(psi)`.
    pub fn load(field: LocalField) -> Result<WeilTable> {
        let key = match field {
            LocalField::Padic { p } => p,
            LocalField::Real => 0,
            LocalField::Complex => {
                let index = field
                    .square_classes()
                    .into_iter()
                    .map(|c| (c, Mu8::ONE))
                    .collect();
                return Ok(WeilTable { field, index });
            }
        };
        let mut index = HashMap::new();
        for &(p, a, e) in WEIL_INDEX.iter().filter(|r| r.0 == key) {
            debug_assert_eq!(p, key);
            index.insert(field.class_of(a)?, Mu8::new(e as i64));
        }
        if index.is_empty() {
            return Err(Error::UnsupportedField(format!(
                "no Weil index table for {}",
                field.name()
            )));
        }
        if index.len() != field.square_classes().len() {
            return Err(Error::Inconsistent(format!(
                "Weil table for {} misses square classes",
                field.name()
            )));
        }
        let t = WeilTable { field, index };
        let one = field.one();
        for a in field.square_classes() {
            for b in field.square_classes() {
                let lhs = t.normalized(one, a).mul(&t.normalized(one, b));
                let rhs = t.normalized(one, a.mul(&b)).mul(&Mu8::sign(hilbert(a, b)));
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "Weil table for {} fails the cocycle identity at ({}, {})",
                        field.name(),
                        a.label(),
                        b.label()
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn index(&self, a: SquareClass) -> Mu8 {
        self.index[&a]
    }

    /// `gamma(psi_{s a}) / gamma(psi_s)`.
    pub fn normalized(&self, s: SquareClass, a: SquareClass) -> Mu8 {
        self.index(s.mul(&a)).div(&self.index(s))
    }

    /// `gamma_psi(a, t) = t gamma(psi_a)/gamma(psi)`.
    pub fn gamma(&self, psi: &PsiConvention, x: &HilElem) -> Mu8 {
        Mu8::sign(x.sign).mul(&self.normalized(psi.scale, x.sq))
    }
}

fn check_field(psi: &PsiConvention, f: LocalField) -> Result<()> {
    if psi.field != f || psi.scale.field != f {
        return Err(Error::FieldMismatch(format!(
            "character over {} applied over {}",
            psi.field.name(),
            f.name()
        )));
    }
    Ok(())
}

/// The character `gamma_psi` of `Hil(F)`.  Over C, `Hil(C) = {(1, +-1)}` and the value is the sign.
pub fn weil_gamma(psi: &PsiConvention, x: &HilElem) -> Result<Mu8> {
    check_field(psi, x.sq.field)?;
    Ok(WeilTable::load(psi.field)?.gamma(psi, x))
}

#[derive(Clone, Debug)]
pub struct GgReport {
    pub field: LocalField,
    pub scale: SquareClass,
    pub alpha: SquareClass,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl GgReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "psi_scale": self.scale.label(),
            "alpha": self.alpha.label(),
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

/// Checks `gamma_psi(a,t) gamma_psi'(a,t) = (a, -alpha)` on all of `Hil(F)`, where `psi' = psi(alpha .)`.
pub fn weil_gg_check(psi: &PsiConvention, alpha: SquareClass) -> Result<GgReport> {
    check_field(psi, alpha.field)?;
    let table = WeilTable::load(psi.field)?;
    let other = psi.rescaled(alpha);
    let minus_alpha = alpha.mul(&psi.field.minus_one());
    let mut failures = Vec::new();
    let els = hil_elements(psi.field);
    for x in &els {
        let lhs = table.gamma(psi, x).mul(&table.gamma(&other, x));
        let rhs = Mu8::sign(hilbert(x.sq, minus_alpha));
        if lhs != rhs {
            failures.push(format!("{}: {lhs} != {rhs}", x.label()));
        }
    }
    Ok(GgReport {
        field: psi.field,
        scale: psi.scale,
        alpha,
        checked: els.len(),
        failures,
    })
}

/// Failures of `gamma_psi(xy) = gamma_psi(x) gamma_psi(y)` over all pairs in `Hil(F)`.
pub fn weil_character_failures(psi: &PsiConvention) -> Result<Vec<String>> {
    let table = WeilTable::load(psi.field)?;
    let els = hil_elements(psi.field);
    let mut out = Vec::new();
    for x in &els {
        for y in &els {
            let lhs = table.gamma(psi, &x.mul(y));
            let rhs = table.gamma(psi, x).mul(&table.gamma(psi, y));
            if lhs != rhs {
                out.push(format!("{} * {}", x.label(), y.label()));
            }
        }
    }
    Ok(out)
}

/// Model of the character group `K^*`.
#[derive(Clone, Debug)]
pub enum CharGroup {
    /// Characters of a finite `K`, with the standard pairing on its presentation.
    Finite { k: Presented, dual: AbGroup },
    /// `(E^x/N^x)^*` over `Q_p`: a restriction bit (nontrivial on `F^x/N^x`) times a
    /// cyclic stand-in for the infinite `(E^x/F^x)^*`.
    QuadraticProxy { group: AbGroup },
    /// `(E^x/R_+)^* = Z`; `k` is the character `z -> (z/|z|)^k`.
    Circle { group: AbGroup },
}

/// Order of the cyclic stand-in for `(E^x/F^x)^*` in [`CharGroup::QuadraticProxy`].
pub const PROXY_ORDER: i64 = 2;

impl CharGroup {
    fn finite(k: LocalGroup) -> Result<CharGroup> {
        let k = k.presentation()?;
        let dual = k.group.dual()?;
        Ok(CharGroup::Finite { k, dual })
    }

    pub fn group(&self) -> &AbGroup {
        match self {
            CharGroup::Finite { dual, .. } => dual,
            CharGroup::QuadraticProxy { group } | CharGroup::Circle { group } => group,
        }
    }

    /// Restriction to `F^x/N^x`, as a map onto `Z/2` (quadratic cases only).
    pub fn restriction(&self) -> Result<Option<GroupHom>> {
        let z2 = AbGroup::cyclic(2, "res");
        match self {
            CharGroup::Finite { .. } => Ok(None),
            CharGroup::QuadraticProxy { group } => {
                Ok(Some(GroupHom::new(group.clone(), z2, vec![vec![1, 0]])?))
            }
            CharGroup::Circle { group } => {
                Ok(Some(GroupHom::new(group.clone(), z2, vec![vec![1]])?))
            }
        }
    }

    /// The character with the given values, checked to be multiplicative on all of `K`.
    pub fn from_values(&self, f: &dyn Fn(&LocalElem) -> Mu8) -> Result<GroupElem> {
        let CharGroup::Finite { k, dual } = self else {
            return Err(Error::NotApplicable(
                "value tables exist only for finite K".into(),
            ));
        };
        let mut coords = Vec::new();
        for (i, &n) in k.group.moduli().iter().enumerate() {
            let v = f(&k.elem(&k.group.generator(i))).exponent() as i64 * n;
            if v % 8 != 0 {
                return Err(Error::Inconsistent(format!(
                    "value on a generator of order {n} is not an {n}-th root"
                )));
            }
            coords.push(v / 8);
        }
        let chi = dual.normalize(&coords);
        for e in k.model.elements() {
            if self.eval(&chi, &e)? != f(&e) {
                return Err(Error::Inconsistent(format!(
                    "values are not a character at {}",
                    k.model.label(&e)
                )));
            }
        }
        Ok(chi)
    }

    pub fn eval(&self, chi: &GroupElem, e: &LocalElem) -> Result<Mu8> {
        let CharGroup::Finite { k, .. } = self else {
            return Err(Error::NotApplicable(
                "value tables exist only for finite K".into(),
            ));
        };
        let q = k.group.pair(chi, &k.coords(e)?);
        q.to_mu8()
            .map(|e| Mu8::new(e as i64))
            .ok_or_else(|| Error::Inconsistent("character value outside mu_8".into()))
    }

    /// The character as a value table on `K`, or as its coordinates for the infinite models.
    pub fn describe(&self, chi: &GroupElem) -> Result<Value> {
        match self {
            CharGroup::Finite { k, .. } => {
                let table: Vec<Value> = k
                    .model
                    .elements()
                    .iter()
                    .map(|e| {
                        Ok(json!({ "k": k.model.label(e), "value": self.eval(chi, e)?.to_json() }))
                    })
                    .collect::<Result<_>>()?;
                let gens: Vec<Value> = (0..k.group.ngens())
                    .map(|i| {
                        let g = k.elem(&k.group.generator(i));
                        Ok(json!({ "k": k.model.label(&g), "value": self.eval(chi, &g)?.to_json() }))
                    })
                    .collect::<Result<_>>()?;
                let trivial = chi.0.iter().all(|&c| c == 0);
                Ok(
                    json!({ "model": "finite", "on_generators": gens, "table": table, "trivial": trivial }),
                )
            }
            CharGroup::QuadraticProxy { .. } => Ok(json!({
                "model": "quadratic_proxy",
                "restriction_nontrivial": chi.0[0] == 1,
                "anticyclotomic_part": chi.0[1],
                "trivial": chi.0.iter().all(|&c| c == 0),
            })),
            CharGroup::Circle { .. } => Ok(json!({
                "model": "circle",
                "k": chi.0[0],
                "formula": format!("z -> (z/|z|)^{}", chi.0[0]),
                "trivial": chi.0[0] == 0,
            })),
        }
    }
}

/// Which archimedean phenomenon a U-side type exhibits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArchCase {
    /// Symmetric U: kernel of order 2, conservation relations hold.
    One,
    /// Complex symplectic or real quaternionic Hermitian U: trivial kernel.
    Two,
    /// Real symplectic, (skew-)Hermitian over C/R, real quaternionic skew-Hermitian U:
    /// kernel `d Z`.
    Three,
}

impl ArchCase {
    pub fn of(u_kind: SpaceKind, field: LocalField) -> Result<ArchCase> {
        use SpaceKind::*;
        match (field, u_kind) {
            (LocalField::Padic { .. }, _) => {
                Err(Error::NotApplicable("non-archimedean field".into()))
            }
            (_, Symmetric) => Ok(ArchCase::One),
            (LocalField::Complex, Symplectic) | (LocalField::Real, QuatHermitian) => {
                Ok(ArchCase::Two)
            }
            (LocalField::Real, Symplectic | Hermitian | SkewHermitian | QuatSkewHermitian) => {
                Ok(ArchCase::Three)
            }
            (LocalField::Complex, k) => Err(Error::InvalidCoefficientSystem(format!(
                "{k} does not exist over C"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ArchCase::One => "case1",
            ArchCase::Two => "case2",
            ArchCase::Three => "case3",
        }
    }
}

/// The group `W_inf` for a U-side coefficient system, with its projections and the
/// Kudla homomorphism for a chosen `psi`.
#[derive(Clone, Debug)]
pub struct EnhancedGroup {
    pub cs: CoefficientSystem,
    pub u_kind: SpaceKind,
    pub v_type: FormType,
    pub psi: PsiConvention,
    pub group: AbGroup,
    pub w0: W0Model,
    /// The factor beyond `W_0`: `K^* x {+-1}^*` for symmetric U, `K^*` for the
    /// quadratic and quaternionic skew-Hermitian cases, trivial otherwise.
    pub extra: AbGroup,
    pub chars: CharGroup,
    /// `W_inf -> W_0` of the V side.
    pub hom_w0: GroupHom,
    pub hom_dim: GroupHom,
    /// `W_inf -> Delta` (Witt model only).
    pub hom_disc: Option<GroupHom>,
    pub hom_xi: GroupHom,
    pub hyperbolic: GroupElem,
    fibre: Option<Subgroup>,
    ambient: AbGroup,
}

fn u_kind_of(cs: &CoefficientSystem) -> Result<SpaceKind> {
    Ok(FormType::from_system(cs)?.kind.partner())
}

/// The group `K` for finite cases.
fn k_group(u_kind: SpaceKind, field: LocalField) -> Result<Option<LocalGroup>> {
    use SpaceKind::*;
    let kind = match (u_kind, field) {
        (Hermitian | SkewHermitian, _) => return Ok(None),
        (Symplectic, LocalField::Complex) => LocalGroupKind::Sign,
        (Symplectic, _) => LocalGroupKind::Hilbert,
        (QuatHermitian | QuatSkewHermitian, LocalField::Real) => LocalGroupKind::Trivial,
        (Symmetric | QuatHermitian | QuatSkewHermitian, _) => LocalGroupKind::Squares,
    };
    Ok(Some(LocalGroup::new(kind, field, None)?))
}

/// Dimension and the square-class part of the discriminant of a V-side class.
fn dim_and_square(c: &SpaceClass) -> (i64, SquareClass) {
    let f = c.ty.field;
    let sq = match c.disc {
        LocalElem::Hil(h) => h.sq,
        LocalElem::Square(s) => s,
        _ => f.one(),
    };
    (c.dim, sq)
}

impl EnhancedGroup {
    pub fn new(cs: &CoefficientSystem, psi: PsiConvention) -> Result<EnhancedGroup> {
        let field = cs.field;
        if psi.field != field {
            return Err(Error::FieldMismatch("psi over another field".into()));
        }
        let v_type = FormType::from_system(cs)?;
        let u_kind = u_kind_of(cs)?;
        let w0 = W0Model::new(v_type)?;
        let chars = match k_group(u_kind, field)? {
            Some(k) => CharGroup::finite(k)?,
            None if field == LocalField::Real => CharGroup::Circle {
                group: AbGroup::new(vec![0], vec!["k".into()])?,
            },
            None => CharGroup::QuadraticProxy {
                group: AbGroup::new(vec![2, PROXY_ORDER], vec!["res".into(), "anti".into()])?,
            },
        };
        let extra = match u_kind {
            SpaceKind::Symmetric => chars.group().product(&AbGroup::cyclic(2, "sign*")),
            SpaceKind::Hermitian | SpaceKind::SkewHermitian => chars.group().clone(),
            SpaceKind::QuatSkewHermitian => chars.group().clone(),
            _ => AbGroup::trivial(),
        };
        let ambient = w0.group.product(&extra);
        let nw = w0.group.ngens();
        let fibre = match chars.restriction()? {
            Some(res) => {
                let parity = GroupHom::from_images(
                    w0.group.clone(),
                    AbGroup::cyclic(2, "parity"),
                    &(0..nw)
                        .map(|i| {
                            Ok(GroupElem(vec![w0
                                .class(&w0.group.generator(i))?
                                .dim
                                .rem_euclid(2)]))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )?;
                let (_, sub) = crate::abgroups::fiber_product_z2(&parity, &res)?;
                Some(sub)
            }
            None => None,
        };
        let group = fibre
            .as_ref()
            .map(|s| s.group.clone())
            .unwrap_or_else(|| ambient.clone());
        let embed = |x: &GroupElem| -> GroupElem {
            match &fibre {
                Some(s) => s.embed.apply(x),
                None => ambient.normalize(&x.0),
            }
        };
        let proj_ambient = |rows: std::ops::Range<usize>, target: &AbGroup| -> Result<GroupHom> {
            let images: Vec<GroupElem> = (0..group.ngens())
                .map(|i| GroupElem(embed(&group.generator(i)).0[rows.clone()].to_vec()))
                .collect();
            GroupHom::from_images(group.clone(), target.clone(), &images)
        };
        let hom_w0 = proj_ambient(0..nw, &w0.group)?;
        let hom_dim = w0.dim_hom()?.compose(&hom_w0)?;
        let hom_disc = match v_type.model() {
            Model::Witt => {
                let delta = v_type.delta().presentation()?;
                let images: Vec<GroupElem> = (0..group.ngens())
                    .map(|i| delta.coords(&w0.class(&hom_w0.apply(&group.generator(i)))?.disc))
                    .collect::<Result<_>>()?;
                Some(GroupHom::from_images(
                    group.clone(),
                    delta.group.clone(),
                    &images,
                )?)
            }
            _ => None,
        };
        let mut h = w0.coords(&hyperbolic_plane(v_type))?.0;
        h.extend(vec![0; extra.ngens()]);
        let hyperbolic = match &fibre {
            Some(s) => s
                .preimage(&GroupElem(h))
                .ok_or_else(|| Error::Inconsistent("H outside the fibre product".into()))?,
            None => group.normalize(&h),
        };
        let mut eg = EnhancedGroup {
            cs: *cs,
            u_kind,
            v_type,
            psi,
            group: group.clone(),
            w0,
            extra,
            hom_w0,
            hom_dim,
            hom_disc,
            hom_xi: GroupHom::from_images(
                group.clone(),
                AbGroup::trivial(),
                &vec![GroupElem(vec![]); group.ngens()],
            )?,
            hyperbolic,
            fibre,
            ambient,
            chars,
        };
        eg.hom_xi = eg.xi_hom(&psi)?;
        Ok(eg)
    }

    fn embed(&self, x: &GroupElem) -> GroupElem {
        match &self.fibre {
            Some(s) => s.embed.apply(x),
            None => self.ambient.normalize(&x.0),
        }
    }

    /// The element with the given `W_0` and extra components, if it lies in the group.
    pub fn from_parts(&self, w0: &GroupElem, extra: &GroupElem) -> Option<GroupElem> {
        let mut v = w0.0.clone();
        v.extend(&extra.0);
        match &self.fibre {
            Some(s) => s.preimage(&GroupElem(v)),
            None => Some(self.group.normalize(&v)),
        }
    }

    /// The extra component of an element.
    pub fn extra_part(&self, x: &GroupElem) -> GroupElem {
        GroupElem(self.embed(x).0[self.w0.group.ngens()..].to_vec())
    }

    /// The V-side class underlying an element.
    pub fn class(&self, x: &GroupElem) -> Result<SpaceClass> {
        self.w0.class(&self.hom_w0.apply(x))
    }

    /// The Kudla character of `x`, computed directly from the case formulas.
    pub fn xi_direct(&self, x: &GroupElem, psi: &PsiConvention) -> Result<GroupElem> {
        check_field(psi, self.cs.field)?;
        let kg = self.chars.group();
        match self.u_kind {
            SpaceKind::Symplectic => {
                let (m, delta) = dim_and_square(&self.class(x)?);
                if self.cs.field == LocalField::Complex {
                    let odd = m.rem_euclid(2) == 1;
                    return self.chars.from_values(&|e| match e {
                        LocalElem::Sign(-1) if odd => Mu8::sign(-1),
                        _ => Mu8::ONE,
                    });
                }
                let table = WeilTable::load(psi.field)?;
                let f = self.cs.field;
                let twist = if ((m * m - m) / 2).rem_euclid(2) == 1 {
                    f.minus_one()
                } else {
                    f.one()
                };
                let alpha = twist.mul(&delta);
                self.chars.from_values(&|e| match e {
                    LocalElem::Hil(h) if m.rem_euclid(2) == 0 => Mu8::sign(hilbert(alpha, h.sq)),
                    LocalElem::Hil(h) => table.gamma(&psi.rescaled(alpha), h),
                    _ => Mu8::ONE,
                })
            }
            SpaceKind::QuatHermitian => {
                if kg.ngens() == 0 {
                    return Ok(kg.zero());
                }
                let (m, delta) = dim_and_square(&self.class(x)?);
                let f = self.cs.field;
                let a = if m.rem_euclid(2) == 1 {
                    f.minus_one().mul(&delta)
                } else {
                    delta
                };
                self.chars.from_values(&|e| match e {
                    LocalElem::Square(s) => Mu8::sign(hilbert(a, *s)),
                    _ => Mu8::ONE,
                })
            }
            SpaceKind::Symmetric => {
                let e = self.extra_part(x);
                Ok(kg.normalize(&e.0[..kg.ngens()]))
            }
            _ => Ok(kg.normalize(&self.extra_part(x).0)),
        }
    }

    /// The Kudla homomorphism `W_inf -> K^*` for `psi`, assembled from its values on generators.
    pub fn xi_hom(&self, psi: &PsiConvention) -> Result<GroupHom> {
        let images: Vec<GroupElem> = (0..self.group.ngens())
            .map(|i| self.xi_direct(&self.group.generator(i), psi))
            .collect::<Result<_>>()?;
        GroupHom::from_images(self.group.clone(), self.chars.group().clone(), &images)
    }

    pub fn is_case3(&self) -> bool {
        matches!(
            ArchCase::of(self.u_kind, self.cs.field),
            Ok(ArchCase::Three)
        )
    }

    /// `CW_inf = W_inf / Z H_inf`.
    pub fn cw_inf(&self) -> Result<Quotient> {
        self.group.quotient(std::slice::from_ref(&self.hyperbolic))
    }

    /// The Witt tower of the V side under an element of `CW_inf`.
    pub fn tower_of_cw(&self, q: &Quotient, x: &GroupElem) -> Result<WittTower> {
        tower_of(&self.class(&q.lift(x))?)
    }

    pub fn to_json(&self) -> Result<Value> {
        let gens: Vec<Value> = (0..self.group.ngens())
            .map(|i| {
                let g = self.group.generator(i);
                Ok(json!({
                    "order": self.group.moduli()[i],
                    "class": self.class(&g)?.to_json(),
                    "extra": self.extra_part(&g).0,
                }))
            })
            .collect::<Result<_>>()?;
        Ok(json!({
            "system": self.cs.to_json(),
            "u_type": self.u_kind,
            "v_type": self.v_type.to_json(),
            "table_row": table_row(&self.cs),
            "group": self.group.to_json(),
            "structure": self.group.describe(),
            "generators": gens,
            "K_dual": self.chars.group().describe(),
            "hyperbolic": self.hyperbolic.0,
        }))
    }
}

/// `W_inf` for the standard `psi`.
pub fn w_inf_group(cs: &CoefficientSystem) -> Result<EnhancedGroup> {
    EnhancedGroup::new(cs, PsiConvention::standard(cs.field))
}

/// The printed shape of the table row for `cs`.
pub fn table_row(cs: &CoefficientSystem) -> &'static str {
    use DivisionKind::*;
    match (cs.field, cs.division, cs.epsilon) {
        (LocalField::Complex, _, 1) => "2Z x {+-1}^*",
        (LocalField::Complex, _, _) => "Z",
        (LocalField::Real, Field, 1) => "2Z x (R^x/R_+)^* x {+-1}^*",
        (LocalField::Real, Field, _) => "(+)_{R^x/R_+} Z w",
        (LocalField::Real, Quadratic(_), 1) => "((+)_{E_-/R_+} Z w) x_{Z/2} (E^x/R_+)^*",
        (LocalField::Real, Quadratic(_), _) => "((+)_{R^x/R_+} Z w) x_{Z/2} (E^x/R_+)^*",
        (LocalField::Real, Quaternion, 1) => "Z",
        (LocalField::Real, Quaternion, _) => "(+)_{R^x/R_+} Z w",
        (_, Field, 1) => "2Z x (F^x/F^x2)^* x {+-1}^*",
        (_, Field, _) => "Z x Hil(F)",
        (_, Quadratic(_), 1) => "(Z x_{Z/2} E_+-/N) x_{Z/2} (E^x/N^x)^*",
        (_, Quadratic(_), _) => "(Z x F^x/N^x) x_{Z/2} (E^x/N^x)^*",
        (_, Quaternion, 1) => "Z x F^x/F^x2",
        (_, Quaternion, _) => "Z x (F^x/F^x2)^*",
    }
}

/// The character `xi(x)` for `psi`.
pub fn kudla_xi(eg: &EnhancedGroup, x: &GroupElem, psi: &PsiConvention) -> Result<GroupElem> {
    if x.0.len() != eg.group.ngens() {
        return Err(Error::TypeMismatch(format!(
            "element has {} coordinates, group has {}",
            x.0.len(),
            eg.group.ngens()
        )));
    }
    let x = eg.group.normalize(&x.0);
    if psi == &eg.psi {
        return Ok(eg.hom_xi.apply(&x));
    }
    Ok(eg.xi_hom(psi)?.apply(&x))
}

/// Kernel of the Kudla homomorphism on `CW_inf`.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub cw_order: Option<u64>,
    pub surjective: bool,
    pub kernel_order: Option<u64>,
    pub kernel_free_rank: usize,
    /// Towers of the kernel generators.
    pub kernel_towers: Vec<WittTower>,
    pub hyperbolic_in_kernel: bool,
}

impl KernelReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cw_inf_order": self.cw_order,
            "surjective": self.surjective,
            "kernel_order": self.kernel_order,
            "kernel_free_rank": self.kernel_free_rank,
            "kernel_generators": self.kernel_towers.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "xi_of_hyperbolic_trivial": self.hyperbolic_in_kernel,
        })
    }
}

pub fn kernel_report(eg: &EnhancedGroup) -> Result<KernelReport> {
    let q = eg.cw_inf()?;
    let hyperbolic_in_kernel = eg.chars.group().is_zero(&eg.hom_xi.apply(&eg.hyperbolic));
    let xi_bar = eg.hom_xi.descend(&q)?;
    let ker = xi_bar.kernel()?;
    let kernel_towers = (0..ker.group.ngens())
        .map(|i| eg.tower_of_cw(&q, &ker.embed.apply(&ker.group.generator(i))))
        .collect::<Result<_>>()?;
    Ok(KernelReport {
        cw_order: q.group.order(),
        surjective: xi_bar.is_surjective()?,
        kernel_order: ker.group.order(),
        kernel_free_rank: ker.group.free_rank(),
        kernel_towers,
        hyperbolic_in_kernel,
    })
}

/// The anti-split tower, or for archimedean case 3 a generator of `K_U = ker xi_inf`.
#[derive(Clone, Debug)]
pub enum AntiSplit {
    Tower {
        cw: GroupElem,
        tower: WittTower,
    },
    KernelGenerator {
        cw: GroupElem,
        tower: WittTower,
        d: i64,
    },
}

impl AntiSplit {
    pub fn tower(&self) -> &WittTower {
        match self {
            AntiSplit::Tower { tower, .. } | AntiSplit::KernelGenerator { tower, .. } => tower,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AntiSplit::Tower { cw, tower } => json!({
                "kind": "anti_split", "cw_inf": cw.0, "tower": tower.to_json(), "deg": tower.deg(),
            }),
            AntiSplit::KernelGenerator { cw, tower, d } => json!({
                "kind": "kernel_generator", "cw_inf": cw.0, "tower": tower.to_json(), "d": d,
                "signature_index": tower.signature_index(),
            }),
        }
    }
}

pub fn anti_split_tower_u(eg: &EnhancedGroup, psi: &PsiConvention) -> Result<AntiSplit> {
    let q = eg.cw_inf()?;
    let xi_bar = eg.xi_hom(psi)?.descend(&q)?;
    let ker = xi_bar.kernel()?;
    if let Ok(ArchCase::Two) = ArchCase::of(eg.u_kind, eg.cs.field) {
        return Err(Error::NotApplicable(format!(
            "{} U over {} has a perfect group and no anti-split tower",
            eg.u_kind,
            eg.cs.field.name()
        )));
    }
    if eg.is_case3() {
        if ker.group.free_rank() != 1 || ker.group.ngens() != 1 {
            return Err(Error::Inconsistent(format!(
                "kernel {} is not infinite cyclic",
                ker.group.describe()
            )));
        }
        let cw = ker.embed.apply(&ker.group.generator(0));
        let mut tower = eg.tower_of_cw(&q, &cw)?;
        if tower.signature_index().unwrap_or(0) < 0 {
            tower = tower.neg()?;
            return Ok(AntiSplit::KernelGenerator {
                cw: q.group.neg(&cw),
                tower,
                d: eg.v_type.d_max(),
            });
        }
        return Ok(AntiSplit::KernelGenerator {
            cw,
            tower,
            d: eg.v_type.d_max(),
        });
    }
    match ker.group.order() {
        Some(2) => {
            let cw = ker.embed.apply(&ker.group.generator(0));
            Ok(AntiSplit::Tower {
                tower: eg.tower_of_cw(&q, &cw)?,
                cw,
            })
        }
        Some(1) => Err(Error::NotApplicable(format!(
            "the Kudla homomorphism for {} U over {} is injective; there is no anti-split tower",
            eg.u_kind,
            eg.cs.field.name()
        ))),
        n => Err(Error::Inconsistent(format!("kernel of order {n:?}"))),
    }
}

/// Comparison of `ker xi` on `W_inf` with `{a w_+ + b w_- : a - b in d Z}` (archimedean case 3).
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub d: i64,
    /// Kernel generators as `(a, b)`.
    pub kernel: Vec<(i64, i64)>,
    pub index: Option<u64>,
    pub equal: bool,
}

impl LatticeReport {
    pub fn to_json(&self) -> Value {
        json!({ "d": self.d, "kernel_generators": self.kernel, "index": self.index, "equal": self.equal })
    }
}

pub fn case3_kernel_lattice(eg: &EnhancedGroup) -> Result<LatticeReport> {
    if !eg.is_case3() {
        return Err(Error::NotApplicable(
            "lattice description is for archimedean case 3".into(),
        ));
    }
    let d = eg.v_type.d_max();
    let ker = eg.hom_xi.kernel()?;
    let to_ab = |x: &GroupElem| -> Result<(i64, i64)> {
        let w = eg.hom_w0.apply(x);
        match eg.v_type.model() {
            Model::Signature => Ok((w.0[0], w.0[1])),
            _ => Err(Error::Inconsistent(
                "case 3 needs the signature model".into(),
            )),
        }
    };
    let kernel: Vec<(i64, i64)> = (0..ker.group.ngens())
        .map(|i| to_ab(&ker.embed.apply(&ker.group.generator(i))))
        .collect::<Result<_>>()?;
    let inside = kernel.iter().all(|(a, b)| (a - b).rem_euclid(d) == 0);
    let zero_extra = eg.extra.zero();
    let mut spans = true;
    for (a, b) in [(d, 0), (1, 1)] {
        match eg.from_parts(&GroupElem(vec![a, b]), &zero_extra) {
            Some(x) => spans &= ker.contains(&x),
            None => spans = false,
        }
    }
    let index = eg
        .group
        .quotient(
            &ker.group
                .moduli()
                .iter()
                .enumerate()
                .map(|(i, _)| ker.embed.apply(&ker.group.generator(i)))
                .collect::<Vec<_>>(),
        )?
        .group
        .order();
    Ok(LatticeReport {
        d,
        kernel,
        index,
        equal: inside && spans,
    })
}

/// `A_inf`, the commutator quotient of `G(U)` in the stable range.
pub fn a_inf_group(u: FormType) -> Result<Option<AbGroup>> {
    use SpaceKind::*;
    let sq = LocalGroup::new(LocalGroupKind::Squares, u.field, None)?.presentation()?;
    Ok(match u.kind {
        Symmetric => Some(sq.group.product(&AbGroup::cyclic(2, "-1"))),
        Symplectic | QuatHermitian => Some(AbGroup::trivial()),
        Hermitian | SkewHermitian => None,
        QuatSkewHermitian => Some(sq.group),
    })
}

/// Exactness data for `1 -> G(U)^* -> CW_U -> CW_0 -> 1`.
#[derive(Clone, Debug)]
pub struct CwUReport {
    pub u_type: FormType,
    pub dim_u: i64,
    /// Whether `A(U) -> A_inf` is known to be an isomorphism for this U.
    pub stable: bool,
    pub dual_order: Option<u64>,
    pub cw0_order: Option<u64>,
    pub cw_u_order: Option<u64>,
    /// `|CW_inf|` and the order of `ker(CW_inf -> CW_0)`, when `CW_U = CW_inf`.
    pub cw_inf_order: Option<u64>,
    pub kernel_to_cw0: Option<u64>,
    pub onto_cw0: bool,
    pub failures: Vec<String>,
}

impl CwUReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u_type": self.u_type.to_json(),
            "dim_u": self.dim_u,
            "stable": self.stable,
            "G_dual_order": self.dual_order,
            "cw0_order": self.cw0_order,
            "cw_u_order": self.cw_u_order,
            "cw_inf_order": self.cw_inf_order,
            "kernel_to_cw0_order": self.kernel_to_cw0,
            "onto_cw0": self.onto_cw0,
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

/// `|CW_U| = |G(U)^*| |CW_0|`.  `anisotropic` marks a nonzero anisotropic U, for which
/// the symmetric and quaternionic skew-Hermitian commutator quotients are not covered.
pub fn cw_u_group(eg: &EnhancedGroup, dim_u: i64, anisotropic: bool) -> Result<CwUReport> {
    if dim_u < 0 {
        return Err(Error::InvalidForm("negative dimension".into()));
    }
    let u_type = eg.v_type.partner();
    let tg = tower_group(eg.v_type, Some(0))?;
    let cw0_order = tg.order();
    let stable = match u_type.kind {
        SpaceKind::Symmetric | SpaceKind::QuatSkewHermitian => dim_u == 0 || !anisotropic,
        _ => true,
    };
    let dual_order = if dim_u == 0 {
        Some(1)
    } else {
        a_inf_group(u_type)?.and_then(|g| g.order())
    };
    let cw_u_order = match (dual_order, cw0_order) {
        (Some(a), Some(b)) if stable => Some(a * b),
        _ => None,
    };
    let mut failures = Vec::new();
    let (mut cw_inf_order, mut kernel_to_cw0, mut onto_cw0) = (None, None, true);
    if dim_u > 0 && stable && a_inf_group(u_type)?.is_some() {
        let q = eg.cw_inf()?;
        let to_cw0 = tg.quotient.proj.compose(&eg.hom_w0)?.descend(&q)?;
        onto_cw0 = to_cw0.is_surjective()?;
        kernel_to_cw0 = to_cw0.kernel()?.group.order();
        cw_inf_order = q.group.order();
        if !onto_cw0 {
            failures.push("CW_inf -> CW_0 is not surjective".into());
        }
        if kernel_to_cw0 != dual_order {
            failures.push(format!(
                "kernel of CW_inf -> CW_0 has order {kernel_to_cw0:?}, expected {dual_order:?}"
            ));
        }
        if cw_inf_order != cw_u_order {
            failures.push(format!(
                "|CW_inf| = {cw_inf_order:?} but |G(U)^*| |CW_0| = {cw_u_order:?}"
            ));
        }
    }
    Ok(CwUReport {
        u_type,
        dim_u,
        stable,
        dual_order,
        cw0_order,
        cw_u_order,
        cw_inf_order,
        kernel_to_cw0,
        onto_cw0,
        failures,
    })
}

/// Input to [`mu_reflection`].
#[derive(Clone, Copy, Debug)]
pub enum ReflectionData {
    /// Reflection `s_v` of a symmetric space, with `<v,v>` in this class.
    Reflection { norm: SquareClass },
    /// Quasi-symmetry of a quaternionic skew-Hermitian space with `a = -1`: the class of `Nrd <v,v>`.
    QuasiMinusOne { reduced_norm: SquareClass },
    /// Quasi-symmetry with `a != -1`: the class of `(1+a)(1+a^i)`.
    QuasiOther { one_plus_a_norm: SquareClass },
}

/// `mu_U` of a reflection or quasi-symmetry, as an element of `A_inf`.
pub fn mu_reflection(u: FormType, data: ReflectionData) -> Result<GroupElem> {
    let sq = LocalGroup::new(LocalGroupKind::Squares, u.field, None)?.presentation()?;
    let a = a_inf_group(u)?.ok_or_else(|| {
        Error::NotApplicable(
            "for Hermitian and skew-Hermitian U, mu_U is the determinant into E^x/F^x".into(),
        )
    })?;
    match (u.kind, data) {
        (SpaceKind::Symmetric, ReflectionData::Reflection { norm }) => {
            let mut v = sq.coords(&LocalElem::Square(norm))?.0;
            v.push(1);
            Ok(a.normalize(&v))
        }
        (SpaceKind::QuatSkewHermitian, ReflectionData::QuasiMinusOne { reduced_norm: c })
        | (SpaceKind::QuatSkewHermitian, ReflectionData::QuasiOther { one_plus_a_norm: c }) => {
            Ok(a.normalize(&sq.coords(&LocalElem::Square(c))?.0))
        }
        (SpaceKind::Symplectic | SpaceKind::QuatHermitian, _) => Ok(a.zero()),
        (k, d) => Err(Error::NotApplicable(format!("{d:?} does not apply to {k}"))),
    }
}

/// The 5 rows of the structural tables for one field, as JSON.
/// Every `(D, eps)` over a field, one per quadratic extension.
pub fn coefficient_systems(field: LocalField) -> Vec<CoefficientSystem> {
    let mut divisions = vec![DivisionKind::Field];
    if field != LocalField::Complex {
        divisions.extend(
            field
                .square_classes()
                .into_iter()
                .filter(|d| !d.is_one())
                .map(DivisionKind::Quadratic),
        );
        divisions.push(DivisionKind::Quaternion);
    }
    let mut out = Vec::new();
    for div in divisions {
        for eps in [1i8, -1] {
            out.extend(CoefficientSystem::new(field, div, eps));
        }
    }
    out
}

pub fn tables_json(field: LocalField) -> Result<Value> {
    let systems = coefficient_systems(field);
    let mut rows = Vec::new();
    for cs in systems {
        let v_type = FormType::from_system(&cs)?;
        let u_type = v_type.partner();
        let eg = w_inf_group(&cs)?;
        let tg = tower_group(v_type, Some(4))?;
        let a_inf = a_inf_group(u_type)?;
        rows.push(json!({
            "system": cs.to_json(),
            "u_type": u_type.kind,
            "v_type": v_type.kind,
            "classical_group": classical_group_name(u_type),
            "w0": tg.w0.group.describe(),
            "delta": format!("{:?}", v_type.delta().kind),
            "a_inf": a_inf.map(|g| g.describe()).unwrap_or_else(|| "E^x/F^x (infinite)".into()),
            "w_inf": eg.to_json()?,
            "cw0_order": tg.order(),
            "d": v_type.d_max(),
        }));
    }
    Ok(json!({ "field": field, "rows": rows }))
}

fn classical_group_name(u: FormType) -> &'static str {
    match u.kind {
        SpaceKind::Symmetric => "O(U)",
        SpaceKind::Symplectic => "Sp(U)",
        SpaceKind::Hermitian | SpaceKind::SkewHermitian => "U(U)",
        SpaceKind::QuatHermitian => "Sp(U) (quaternionic)",
        SpaceKind::QuatSkewHermitian => "O(U) (quaternionic)",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    fn systems(f: LocalField) -> Vec<CoefficientSystem> {
        coefficient_systems(f)
    }

    #[test]
    fn weil_examples() {
        let r = PsiConvention::standard(LocalField::Real);
        let m1 = LocalField::Real.minus_one();
        assert_eq!(
            weil_gamma(&r, &HilElem { sq: m1, sign: 1 }).unwrap(),
            Mu8::new(6)
        );
        let f = q(5);
        let u = f.class_of(2).unwrap();
        assert_eq!(
            weil_gamma(&PsiConvention::standard(f), &HilElem { sq: u, sign: 1 }).unwrap(),
            Mu8::ONE
        );
        for f in [q(2), q(3), LocalField::Real] {
            assert_eq!(
                weil_gamma(&PsiConvention::standard(f), &HilElem::identity(f)).unwrap(),
                Mu8::ONE
            );
        }
        assert!(matches!(
            WeilTable::load(q(11)),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn gamma_is_a_character_and_gg_holds() {
        for f in [
            q(2),
            q(3),
            q(5),
            q(7),
            LocalField::Real,
            LocalField::Complex,
        ] {
            for s in f.square_classes() {
                let psi = PsiConvention { field: f, scale: s };
                assert!(weil_character_failures(&psi).unwrap().is_empty());
                for alpha in f.square_classes() {
                    let r = weil_gg_check(&psi, alpha).unwrap();
                    assert!(r.passed(), "{}: {:?}", f.name(), r.failures);
                }
            }
        }
    }

    #[test]
    fn table_shapes() {
        let f = q(3);
        let quat =
            w_inf_group(&CoefficientSystem::new(f, DivisionKind::Quaternion, 1).unwrap()).unwrap();
        assert_eq!(quat.group.invariant_factors(), (1, vec![2, 2]));
        let rs = w_inf_group(
            &CoefficientSystem::new(LocalField::Real, DivisionKind::Field, -1).unwrap(),
        )
        .unwrap();
        assert_eq!(rs.group.invariant_factors(), (2, vec![]));
        let cs = w_inf_group(
            &CoefficientSystem::new(LocalField::Complex, DivisionKind::Field, -1).unwrap(),
        )
        .unwrap();
        assert_eq!(cs.group.invariant_factors(), (1, vec![]));
        let sym = w_inf_group(&CoefficientSystem::new(f, DivisionKind::Field, 1).unwrap()).unwrap();
        assert_eq!(sym.group.invariant_factors(), (1, vec![2, 2, 2]));
    }

    #[test]
    fn xi_examples() {
        let f = q(3);
        let quat =
            w_inf_group(&CoefficientSystem::new(f, DivisionKind::Quaternion, 1).unwrap()).unwrap();
        let zero = quat.group.zero();
        assert!(quat
            .chars
            .group()
            .is_zero(&kudla_xi(&quat, &zero, &quat.psi).unwrap()));
        // (1, 1) maps to (-1, .)_F.
        let x = quat
            .from_parts(
                &quat
                    .w0
                    .coords(
                        &SpaceClass::new(quat.v_type, 1, LocalElem::Square(f.one()), 0).unwrap(),
                    )
                    .unwrap(),
                &GroupElem(vec![]),
            )
            .unwrap();
        let chi = kudla_xi(&quat, &x, &quat.psi).unwrap();
        for s in f.square_classes() {
            let v = quat.chars.eval(&chi, &LocalElem::Square(s)).unwrap();
            assert_eq!(v, Mu8::sign(hilbert(f.minus_one(), s)));
        }
        // m = 2, delta = (1,+1) on the symplectic side gives (-1, p_F(.)).
        let sp = w_inf_group(&CoefficientSystem::new(f, DivisionKind::Field, -1).unwrap()).unwrap();
        let x = sp
            .w0
            .coords(
                &SpaceClass::new(sp.v_type, 2, LocalElem::Hil(HilElem::identity(f)), 0).unwrap(),
            )
            .unwrap();
        let chi = kudla_xi(&sp, &x, &sp.psi).unwrap();
        for h in hil_elements(f) {
            assert_eq!(
                sp.chars.eval(&chi, &LocalElem::Hil(h)).unwrap(),
                Mu8::sign(hilbert(f.minus_one(), h.sq))
            );
        }
    }

    #[test]
    fn xi_matches_formula_on_a_box() {
        for f in [q(2), q(3), q(5)] {
            for cs in systems(f) {
                let eg = w_inf_group(&cs).unwrap();
                let n = eg.group.ngens();
                let mut coords = vec![0i64; n];
                // Sweep small coefficient vectors.
                let mut count = 0;
                loop {
                    let x = eg.group.normalize(&coords);
                    assert_eq!(
                        eg.hom_xi.apply(&x),
                        eg.xi_direct(&x, &eg.psi).unwrap(),
                        "{:?}",
                        cs
                    );
                    count += 1;
                    let mut i = 0;
                    while i < n {
                        coords[i] += 1;
                        if coords[i] <= 2 {
                            break;
                        }
                        coords[i] = -1;
                        i += 1;
                    }
                    if i == n || count > 3000 {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_order_two_with_degree_d() {
        for f in [q(2), q(3), q(5), q(7)] {
            for cs in systems(f) {
                let eg = w_inf_group(&cs).unwrap();
                let r = kernel_report(&eg).unwrap();
                assert!(r.surjective, "{cs:?}");
                assert!(r.hyperbolic_in_kernel);
                assert_eq!(r.kernel_order, Some(2), "{cs:?}");
                let t = anti_split_tower_u(&eg, &eg.psi).unwrap();
                assert_eq!(t.tower().deg(), eg.v_type.d_max(), "{cs:?}");
            }
        }
    }

    #[test]
    fn archimedean_kernels() {
        for f in [LocalField::Real, LocalField::Complex] {
            for cs in systems(f) {
                let eg = w_inf_group(&cs).unwrap();
                let r = kernel_report(&eg).unwrap();
                assert!(r.surjective, "{cs:?}");
                match ArchCase::of(eg.u_kind, f).unwrap() {
                    ArchCase::One => {
                        assert_eq!(r.kernel_order, Some(2));
                        assert_eq!(anti_split_tower_u(&eg, &eg.psi).unwrap().tower().deg(), 0);
                    }
                    ArchCase::Two => {
                        // K is {+-1} for complex symplectic U and trivial for real quaternionic Hermitian U.
                        let expected = if f == LocalField::Complex { 1 } else { 2 };
                        assert_eq!(r.kernel_order, Some(expected));
                        assert!(anti_split_tower_u(&eg, &eg.psi).is_err());
                    }
                    ArchCase::Three => {
                        assert_eq!(r.kernel_free_rank, 1);
                        let l = case3_kernel_lattice(&eg).unwrap();
                        assert!(l.equal, "{cs:?}: {:?}", l.kernel);
                        let AntiSplit::KernelGenerator { tower, d, .. } =
                            anti_split_tower_u(&eg, &eg.psi).unwrap()
                        else {
                            panic!()
                        };
                        assert_eq!(tower.signature_index(), Some(d));
                    }
                }
            }
        }
    }

    #[test]
    fn real_symplectic_kernel_has_index_four() {
        let eg = w_inf_group(
            &CoefficientSystem::new(LocalField::Real, DivisionKind::Field, -1).unwrap(),
        )
        .unwrap();
        let l = case3_kernel_lattice(&eg).unwrap();
        assert!(l.equal);
        assert_eq!(l.d, 4);
        assert_eq!(l.index, Some(4));
    }

    #[test]
    fn exact_sequence_orders() {
        let f = q(3);
        for cs in systems(f) {
            let eg = w_inf_group(&cs).unwrap();
            let r = cw_u_group(&eg, 2, false).unwrap();
            assert!(r.passed(), "{:?}", r);
        }
        let sym = w_inf_group(&CoefficientSystem::new(f, DivisionKind::Field, 1).unwrap()).unwrap();
        assert_eq!(cw_u_group(&sym, 2, false).unwrap().cw_u_order, Some(8));
        let sp = w_inf_group(&CoefficientSystem::new(f, DivisionKind::Field, -1).unwrap()).unwrap();
        assert_eq!(cw_u_group(&sp, 2, false).unwrap().cw_u_order, Some(16));
    }

    #[test]
    fn reflections() {
        let f = q(3);
        let u = FormType::new(SpaceKind::Symmetric, f, None).unwrap();
        let a = a_inf_group(u).unwrap().unwrap();
        let x = mu_reflection(
            u,
            ReflectionData::Reflection {
                norm: f.class_of(3).unwrap(),
            },
        )
        .unwrap();
        assert!(a.is_zero(&a.add(&x, &x)));
        assert!(!a.is_zero(&x));
        let qs = FormType::new(SpaceKind::QuatSkewHermitian, f, None).unwrap();
        let y = mu_reflection(
            qs,
            ReflectionData::QuasiMinusOne {
                reduced_norm: f.class_of(2).unwrap(),
            },
        )
        .unwrap();
        assert_eq!(y.0.len(), 2);
        let h = FormType::new(SpaceKind::Hermitian, f, Some(f.class_of(3).unwrap())).unwrap();
        assert!(mu_reflection(h, ReflectionData::Reflection { norm: f.one() }).is_err());
    }
}
