//! Finitely generated abelian groups with labelled generators.
//!
//! A group is `Z^n / L` where `L` is diagonal: coordinate `i` lives in `Z/m_i`, with
//! `m_i = 0` meaning a free coordinate.  Kernels, images, quotients and fibre products
//! are computed through column Hermite and Smith forms, so results come back in
//! invariant-factor shape (free coordinates first, then torsion with each order
//! dividing the next).

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::intmat::{self, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    moduli: Vec<i64>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(pub Vec<i64>);

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// An element of `Q/Z`, stored as a reduced fraction `num/den` with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QZ {
    pub num: i64,
    pub den: i64,
}

impl QZ {
    pub fn new(num: i64, den: i64) -> QZ {
        assert!(den > 0);
        let n = num.rem_euclid(den);
        let g = gcd(n, den).max(1);
        QZ {
            num: n / g,
            den: den / g,
        }
    }

    pub fn zero() -> QZ {
        QZ { num: 0, den: 1 }
    }

    pub fn add(&self, o: &QZ) -> QZ {
        let den = lcm(self.den, o.den);
        QZ::new(self.num * (den / self.den) + o.num * (den / o.den), den)
    }

    /// Exponent `e` with value `exp(2 pi i e / 8)`, when the order divides 8.
    pub fn to_mu8(&self) -> Option<u8> {
        (8 % self.den == 0).then(|| (self.num * (8 / self.den)) as u8)
    }
}

impl AbGroup {
    pub fn new(moduli: Vec<i64>, labels: Vec<String>) -> Result<AbGroup> {
        if moduli.len() != labels.len() {
            return Err(Error::InvalidGroup(
                "one label per generator required".into(),
            ));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 0 || m == 1) {
            return Err(Error::InvalidGroup(format!(
                "generator order {m} not allowed"
            )));
        }
        Ok(AbGroup { moduli, labels })
    }

    pub fn with_default_labels(moduli: Vec<i64>, prefix: &str) -> Result<AbGroup> {
        let labels = (0..moduli.len()).map(|i| format!("{prefix}{i}")).collect();
        AbGroup::new(moduli, labels)
    }

    pub fn trivial() -> AbGroup {
        AbGroup {
            moduli: vec![],
            labels: vec![],
        }
    }

    pub fn cyclic(n: i64, label: &str) -> AbGroup {
        if n == 1 {
            return AbGroup::trivial();
        }
        AbGroup {
            moduli: vec![n],
            labels: vec![label.into()],
        }
    }

    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&m| m == 0).count()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.moduli.iter().copied().filter(|&m| m != 0).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite()
            .then(|| self.moduli.iter().map(|&m| m as u64).product())
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.ngens()])
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        let mut v = vec![0; self.ngens()];
        v[i] = 1;
        self.normalize(&v)
    }

    pub fn normalize(&self, v: &[i64]) -> GroupElem {
        assert_eq!(v.len(), self.ngens(), "coordinate length mismatch");
        GroupElem(
            v.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| if m == 0 { x } else { x.rem_euclid(m) })
                .collect(),
        )
    }

    pub fn elem(&self, v: &[i64]) -> Result<GroupElem> {
        if v.len() != self.ngens() {
            return Err(Error::InvalidGroup(format!(
                "expected {} coordinates, got {}",
                self.ngens(),
                v.len()
            )));
        }
        Ok(self.normalize(v))
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.normalize(&v)
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.normalize(&v)
    }

    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().map(|x| k * x).collect();
        self.normalize(&v)
    }

    pub fn is_zero(&self, a: &GroupElem) -> bool {
        self.normalize(&a.0).0.iter().all(|&x| x == 0)
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, a: &GroupElem) -> Option<i64> {
        let mut o = 1;
        for (&x, &m) in a.0.iter().zip(&self.moduli) {
            if m == 0 {
                if x != 0 {
                    return None;
                }
            } else {
                o = lcm(o, m / gcd(x, m));
            }
        }
        Some(o)
    }

    /// All elements of a finite group in mixed-radix order.
    pub fn elements(&self) -> Result<Vec<GroupElem>> {
        let n = self
            .order()
            .ok_or_else(|| Error::InvalidGroup("cannot enumerate an infinite group".into()))?;
        if n > 1 << 20 {
            return Err(Error::InvalidGroup(format!(
                "group of order {n} too large to enumerate"
            )));
        }
        let mut out = Vec::with_capacity(n as usize);
        for mut k in 0..n as i64 {
            let mut v = Vec::with_capacity(self.ngens());
            for &m in &self.moduli {
                v.push(k % m);
                k /= m;
            }
            out.push(GroupElem(v));
        }
        Ok(out)
    }

    /// Generators of the relation lattice `L`.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        let n = self.ngens();
        self.moduli
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| {
                let mut v = vec![0; n];
                v[i] = m;
                v
            })
            .collect()
    }

    /// Canonical isomorphism type: free rank and invariant factors.
    pub fn invariant_factors(&self) -> (usize, Vec<i64>) {
        let t = self.torsion();
        let k = t.len();
        let mut a = intmat::zeros(k, k);
        for (i, &m) in t.iter().enumerate() {
            a[i][i] = m;
        }
        let (diag, ..) = intmat::smith(&a, k);
        (
            self.free_rank(),
            diag.into_iter().filter(|&d| d > 1).collect(),
        )
    }

    pub fn is_isomorphic(&self, other: &AbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    pub fn product(&self, other: &AbGroup) -> AbGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend(&other.moduli);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        AbGroup { moduli, labels }
    }

    pub fn product_all(groups: &[&AbGroup]) -> AbGroup {
        groups
            .iter()
            .fold(AbGroup::trivial(), |acc, g| acc.product(g))
    }

    /// Character group of a finite group, with the standard pairing on generators.
    pub fn dual(&self) -> Result<AbGroup> {
        if !self.is_finite() {
            return Err(Error::InvalidGroup(
                "dual of an infinite group is not finitely generated".into(),
            ));
        }
        Ok(AbGroup {
            moduli: self.moduli.clone(),
            labels: self.labels.iter().map(|l| format!("chi[{l}]")).collect(),
        })
    }

    /// Pairing of a character (coordinates in `self.dual()`) with an element.
    pub fn pair(&self, chi: &GroupElem, x: &GroupElem) -> QZ {
        self.moduli
            .iter()
            .enumerate()
            .fold(QZ::zero(), |acc, (i, &m)| {
                acc.add(&QZ::new(chi.0[i] * x.0[i], m))
            })
    }

    /// `self / <elems>`.
    pub fn quotient(&self, elems: &[GroupElem]) -> Result<Quotient> {
        let n = self.ngens();
        let unit: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut rels = self.relations();
        rels.extend(elems.iter().map(|e| e.0.clone()));
        let sq = Subquotient::build(n, &unit, &rels, "q")?;
        let matrix = intmat::from_columns(
            sq.group.ngens(),
            &unit
                .iter()
                .map(|u| sq.coords(u).expect("unit vectors span"))
                .collect::<Vec<_>>(),
        );
        let proj = GroupHom::new(self.clone(), sq.group.clone(), matrix)?;
        Ok(Quotient {
            group: sq.group.clone(),
            proj,
            lifts: sq.gens.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank(),
            "torsion": self.torsion(),
            "generators": self.labels.iter().zip(&self.moduli).map(|(l, m)| json!({"label": l, "order": m})).collect::<Vec<_>>(),
            "order": self.order(),
        })
    }

    pub fn describe(&self) -> String {
        let (r, t) = self.invariant_factors();
        let mut parts: Vec<String> = Vec::new();
        if r > 0 {
            parts.push(if r == 1 { "Z".into() } else { format!("Z^{r}") });
        }
        parts.extend(t.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// `span(gens) / span(rels)` inside `Z^n`, in Smith-normal shape.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: AbGroup,
    /// Generators of `group` as vectors of `Z^n`.
    pub gens: Vec<Vec<i64>>,
    basis: Mat,
    pivots: Vec<usize>,
    p: Mat,
    kept: Vec<(usize, i64)>,
}

impl Subquotient {
    pub fn build(
        n: usize,
        gens: &[Vec<i64>],
        rels: &[Vec<i64>],
        prefix: &str,
    ) -> Result<Subquotient> {
        let mut all = gens.to_vec();
        all.extend(rels.iter().cloned());
        let a = intmat::from_columns(n, &all);
        let (h, _, pivots) = intmat::column_hermite(&a, all.len());
        let r = pivots.len();
        let basis: Mat = h.iter().map(|row| row[..r].to_vec()).collect();
        let mut rel_coords = Vec::with_capacity(rels.len());
        for rel in rels {
            let c = intmat::solve_echelon(&basis, &pivots, rel).ok_or_else(|| {
                Error::InvalidGroup("relation outside the generated lattice".into())
            })?;
            rel_coords.push(c);
        }
        let rmat = intmat::from_columns(r, &rel_coords);
        let (diag, p, pinv, _) = intmat::smith(&rmat, rels.len());
        let modulus = |i: usize| if i < diag.len() { diag[i] } else { 0 };
        let mut kept: Vec<(usize, i64)> = (0..r)
            .filter(|&i| modulus(i) == 0)
            .map(|i| (i, 0))
            .collect();
        kept.extend((0..r).filter(|&i| modulus(i) > 1).map(|i| (i, modulus(i))));
        let gens_out: Vec<Vec<i64>> = kept
            .iter()
            .map(|&(i, _)| {
                let col = intmat::column(&pinv, i);
                intmat::mat_vec(&basis, &col)
            })
            .collect();
        let moduli: Vec<i64> = kept.iter().map(|&(_, m)| m).collect();
        let group = AbGroup::with_default_labels(moduli, prefix)?;
        Ok(Subquotient {
            group,
            gens: gens_out,
            basis,
            pivots,
            p,
            kept,
        })
    }

    /// Coordinates of a vector of the generated lattice, `None` if it lies outside.
    pub fn coords(&self, y: &[i64]) -> Option<Vec<i64>> {
        let c = intmat::solve_echelon(&self.basis, &self.pivots, y)?;
        let z = intmat::mat_vec(&self.p, &c);
        Some(
            self.kept
                .iter()
                .map(|&(i, m)| if m == 0 { z[i] } else { z[i].rem_euclid(m) })
                .collect(),
        )
    }
}

/// A quotient `A / B` with its projection and chosen lifts of the new generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: AbGroup,
    pub proj: GroupHom,
    pub lifts: Vec<Vec<i64>>,
}

impl Quotient {
    pub fn lift(&self, q: &GroupElem) -> GroupElem {
        let n = self.proj.source.ngens();
        let mut v = vec![0; n];
        for (k, l) in q.0.iter().zip(&self.lifts) {
            for i in 0..n {
                v[i] += k * l[i];
            }
        }
        self.proj.source.normalize(&v)
    }
}

/// A subgroup together with its embedding into the ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: AbGroup,
    pub embed: GroupHom,
    sq: Subquotient,
}

impl Subgroup {
    /// Coordinates in the subgroup of an ambient element, `None` if it is not a member.
    pub fn preimage(&self, y: &GroupElem) -> Option<GroupElem> {
        self.sq.coords(&y.0).map(|c| self.group.normalize(&c))
    }

    pub fn contains(&self, y: &GroupElem) -> bool {
        self.preimage(y).is_some()
    }

    fn from_subquotient(ambient: &AbGroup, sq: Subquotient) -> Result<Subgroup> {
        let matrix = intmat::from_columns(ambient.ngens(), &sq.gens);
        let embed = GroupHom::new(sq.group.clone(), ambient.clone(), matrix)?;
        Ok(Subgroup {
            group: sq.group.clone(),
            embed,
            sq,
        })
    }

    /// Subgroup generated by the given elements.
    pub fn generated(ambient: &AbGroup, elems: &[GroupElem]) -> Result<Subgroup> {
        let rels = ambient.relations();
        let mut gens: Vec<Vec<i64>> = elems.iter().map(|e| e.0.clone()).collect();
        gens.extend(rels.iter().cloned());
        let sq = Subquotient::build(ambient.ngens(), &gens, &rels, "s")?;
        Subgroup::from_subquotient(ambient, sq)
    }
}

/// A homomorphism given by its matrix on generators (`target.ngens() x source.ngens()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub matrix: Mat,
}

impl GroupHom {
    pub fn new(source: AbGroup, target: AbGroup, matrix: Mat) -> Result<GroupHom> {
        let (m, n) = (target.ngens(), source.ngens());
        if matrix.len() != m || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(
                "homomorphism matrix has the wrong shape".into(),
            ));
        }
        for (j, &t) in source.moduli.iter().enumerate() {
            if t == 0 {
                continue;
            }
            for (i, &mt) in target.moduli.iter().enumerate() {
                let v = t * matrix[i][j];
                let ok = if mt == 0 { v == 0 } else { v % mt == 0 };
                if !ok {
                    return Err(Error::InvalidGroup(format!(
                        "generator {} of order {t} cannot map to {:?}",
                        source.labels[j],
                        intmat::column(&matrix, j)
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    /// Builds a homomorphism from the images of the source generators.
    pub fn from_images(source: AbGroup, target: AbGroup, images: &[GroupElem]) -> Result<GroupHom> {
        let cols: Vec<Vec<i64>> = images.iter().map(|e| e.0.clone()).collect();
        let matrix = intmat::from_columns(target.ngens(), &cols);
        GroupHom::new(source, target, matrix)
    }

    pub fn apply(&self, x: &GroupElem) -> GroupElem {
        self.target.normalize(&intmat::mat_vec(&self.matrix, &x.0))
    }

    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::InvalidGroup(
                "composition of incompatible homomorphisms".into(),
            ));
        }
        let m = intmat::mat_mul(
            &self.matrix,
            &first.matrix,
            self.source.ngens(),
            first.source.ngens(),
        );
        GroupHom::new(first.source.clone(), self.target.clone(), m)
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        let (m, n) = (self.target.ngens(), self.source.ngens());
        let trels = self.target.relations();
        let k = trels.len();
        let mut a = intmat::zeros(m, n + k);
        for i in 0..m {
            a[i][..n].copy_from_slice(&self.matrix[i]);
            for (j, r) in trels.iter().enumerate() {
                a[i][n + j] = -r[i];
            }
        }
        let mut gens: Vec<Vec<i64>> = intmat::integer_kernel(&a, n + k)
            .into_iter()
            .map(|v| v[..n].to_vec())
            .collect();
        let srels = self.source.relations();
        gens.extend(srels.iter().cloned());
        let sq = Subquotient::build(n, &gens, &srels, "k")?;
        Subgroup::from_subquotient(&self.source, sq)
    }

    pub fn image(&self) -> Result<Subgroup> {
        let m = self.target.ngens();
        let trels = self.target.relations();
        let mut gens: Vec<Vec<i64>> = (0..self.source.ngens())
            .map(|j| intmat::column(&self.matrix, j))
            .collect();
        gens.extend(trels.iter().cloned());
        let sq = Subquotient::build(m, &gens, &trels, "im")?;
        Subgroup::from_subquotient(&self.target, sq)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let im = self.image()?;
        Ok((0..self.target.ngens()).all(|i| im.contains(&self.target.generator(i))))
    }

    /// The induced map `A/<elems> -> B`, requiring the elements to lie in the kernel.
    pub fn descend(&self, q: &Quotient) -> Result<GroupHom> {
        let images: Vec<GroupElem> = q
            .lifts
            .iter()
            .map(|l| self.apply(&self.source.normalize(l)))
            .collect();
        let h = GroupHom::from_images(q.group.clone(), self.target.clone(), &images)?;
        for i in 0..self.source.ngens() {
            let g = self.source.generator(i);
            if h.apply(&q.proj.apply(&g)) != self.apply(&g) {
                return Err(Error::InvalidGroup(
                    "map does not descend to the quotient".into(),
                ));
            }
        }
        Ok(h)
    }
}

/// Fibre product `A x_{Z/2} B = {(a, b) : f(a) = g(b)}` of two surjections onto `Z/2`.
pub fn fiber_product_z2(f: &GroupHom, g: &GroupHom) -> Result<(AbGroup, Subgroup)> {
    for h in [f, g] {
        if h.target.moduli != [2] {
            return Err(Error::InvalidGroup(
                "fibre product maps must land in Z/2".into(),
            ));
        }
        if !h.is_surjective()? {
            return Err(Error::InvalidGroup(
                "fibre product maps must be surjective".into(),
            ));
        }
    }
    let prod = f.source.product(&g.source);
    let mut row = f.matrix[0].clone();
    row.extend(&g.matrix[0]);
    let diff = GroupHom::new(prod.clone(), f.target.clone(), vec![row])?;
    let sub = diff.kernel()?;
    Ok((prod, sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(m: &[i64]) -> AbGroup {
        AbGroup::with_default_labels(m.to_vec(), "g").unwrap()
    }

    #[test]
    fn invariant_factors_normalize() {
        assert_eq!(grp(&[2, 3]).invariant_factors(), (0, vec![6]));
        assert_eq!(grp(&[4, 6]).invariant_factors(), (0, vec![2, 12]));
        assert!(grp(&[2, 3]).is_isomorphic(&grp(&[6])));
        assert!(!grp(&[2, 2]).is_isomorphic(&grp(&[4])));
        assert_eq!(grp(&[0, 2]).order(), None);
    }

    #[test]
    fn quotient_of_z_by_2z() {
        let z = grp(&[0]);
        let q = z.quotient(&[GroupElem(vec![2])]).unwrap();
        assert_eq!(q.group.invariant_factors(), (0, vec![2]));
        assert_eq!(
            q.proj.apply(&GroupElem(vec![3])),
            q.proj.apply(&GroupElem(vec![1]))
        );
    }

    #[test]
    fn quotient_twisted() {
        // Z x Z/2 modulo (2, 1) is cyclic of order 4.
        let g = grp(&[0, 2]);
        let q = g.quotient(&[GroupElem(vec![2, 1])]).unwrap();
        assert_eq!(q.group.invariant_factors(), (0, vec![4]));
        for lift in &q.lifts {
            let e = g.normalize(lift);
            let back = q.proj.apply(&e);
            assert_eq!(q.lift(&back).0.len(), 2);
        }
    }

    #[test]
    fn kernel_and_image() {
        // Z/4 -> Z/2 reduction.
        let h = GroupHom::new(grp(&[4]), grp(&[2]), vec![vec![1]]).unwrap();
        let k = h.kernel().unwrap();
        assert_eq!(k.group.invariant_factors(), (0, vec![2]));
        assert!(k.contains(&GroupElem(vec![2])));
        assert!(!k.contains(&GroupElem(vec![1])));
        assert!(h.is_surjective().unwrap());
        // Z^2 -> Z, (a, b) -> a - b, kernel is the diagonal.
        let d = GroupHom::new(grp(&[0, 0]), grp(&[0]), vec![vec![1, -1]]).unwrap();
        let k = d.kernel().unwrap();
        assert_eq!(k.group.invariant_factors(), (1, vec![]));
        assert!(k.contains(&GroupElem(vec![5, 5])));
    }

    #[test]
    fn invalid_hom_rejected() {
        assert!(GroupHom::new(grp(&[3]), grp(&[2]), vec![vec![1]]).is_err());
        assert!(GroupHom::new(grp(&[2]), grp(&[0]), vec![vec![1]]).is_err());
    }

    #[test]
    fn fibre_product_over_z2() {
        let z = grp(&[0]);
        let c4 = grp(&[4]);
        let z2 = grp(&[2]);
        let f = GroupHom::new(z, z2.clone(), vec![vec![1]]).unwrap();
        let g = GroupHom::new(c4, z2, vec![vec![1]]).unwrap();
        let (prod, sub) = fiber_product_z2(&f, &g).unwrap();
        assert_eq!(prod.ngens(), 2);
        assert!(sub.contains(&GroupElem(vec![1, 1])));
        assert!(sub.contains(&GroupElem(vec![2, 0])));
        assert!(!sub.contains(&GroupElem(vec![1, 0])));
        assert_eq!(sub.group.free_rank(), 1);
    }

    #[test]
    fn dual_pairing() {
        let g = grp(&[2, 4]);
        let d = g.dual().unwrap();
        assert_eq!(d.invariant_factors(), g.invariant_factors());
        let chi = GroupElem(vec![1, 1]);
        assert_eq!(g.pair(&chi, &GroupElem(vec![1, 1])).to_mu8(), Some(6));
        assert!(grp(&[0]).dual().is_err());
    }

    #[test]
    fn elements_enumerated() {
        let g = grp(&[2, 3]);
        let els = g.elements().unwrap();
        assert_eq!(els.len(), 6);
        assert_eq!(els.iter().filter_map(|e| g.element_order(e)).max(), Some(6));
    }

    #[test]
    fn generated_subgroup() {
        let g = grp(&[4, 2]);
        let s = Subgroup::generated(&g, &[GroupElem(vec![2, 1])]).unwrap();
        assert_eq!(s.group.order(), Some(2));
        assert!(s.contains(&GroupElem(vec![0, 0])));
        assert!(!s.contains(&GroupElem(vec![2, 0])));
    }
}
