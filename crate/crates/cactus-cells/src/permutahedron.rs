//! The permutahedron `Π_m` (convex hull of the permutations of
//! `(1, ..., m)`), its face lattice indexed by compositions of `[m]`, and
//! the star-shaped homeomorphism between `Π_{n-1}` and the closed top cell
//! of the weight-`(n-1)` moduli space.
//!
//! Membership uses the submodular description: a vector lies in `Π_m` iff
//! its entries sum to `m(m+1)/2` and every `k` smallest entries sum to at
//! least `1 + 2 + ... + k`. The tight subsets of a member form a chain,
//! which reads off the minimal face containing it.

use crate::curves::{MarkedCurve, Rational};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::trees::{Composition, LeafLabel};
use num::{One, Zero};
use std::collections::BTreeSet;

fn triangular(k: usize) -> Rational {
    Rational::new((k * (k + 1) / 2).into(), 1.into())
}

fn from_usize(v: usize) -> Rational {
    Rational::new(v.into(), 1.into())
}

/// All compositions (ordered set partitions) of `[m]`.
pub fn compositions_of(m: usize) -> Result<Vec<Composition>> {
    if m == 0 || m > 12 {
        return Err(Error::Domain(format!("need 1 <= m <= 12, got {m}")));
    }
    let full: u32 = (1u32 << m) - 1;
    let mut out = Vec::new();
    let mut parts: Vec<LeafLabel> = Vec::new();
    fn rec(remaining: u32, m: usize, parts: &mut Vec<LeafLabel>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition(parts.clone()));
            return;
        }
        let mut sub = remaining;
        while sub != 0 {
            let label =
                LeafLabel::new((0..m).filter(|b| sub >> b & 1 == 1).map(|b| b + 1).collect())
                    .unwrap();
            parts.push(label);
            rec(remaining & !sub, m, parts, out);
            parts.pop();
            sub = (sub - 1) & remaining;
        }
    }
    rec(full, m, &mut parts, &mut out);
    out.sort();
    Ok(out)
}

/// One face of `Π_m`.
#[derive(Clone, Debug)]
pub struct FaceInfo {
    pub composition: Composition,
    pub dim: usize,
    pub centroid: Vec<Rational>,
}

/// The full face lattice of `Π_m`: one face per composition of `[m]`, with
/// its dimension `m - r` and exact centroid. Containment of faces is
/// refinement of compositions.
pub fn face_lattice(m: usize) -> Result<Vec<FaceInfo>> {
    Ok(compositions_of(m)?
        .into_iter()
        .map(|composition| {
            let dim = m - composition.num_parts();
            let centroid = centroid(&composition);
            FaceInfo {
                composition,
                dim,
                centroid,
            }
        })
        .collect())
}

/// Exact centroid of the face `Π_{A_•}`: an element of part `j` (of size
/// `s`, preceded by `p` elements) gets coordinate `p + (s + 1)/2`.
pub fn centroid(composition: &Composition) -> Vec<Rational> {
    let m = composition.ground_size();
    let mut out = vec![Rational::zero(); m];
    let mut prefix = 0usize;
    for part in composition.parts() {
        let s = part.len();
        let value = from_usize(prefix) + Rational::new((s + 1).into(), 2.into());
        for &i in part.elements() {
            out[i - 1] = value.clone();
        }
        prefix += s;
    }
    out
}

/// Checks membership of `x` in `Π_m`.
pub fn check_membership(x: &[Rational]) -> Result<()> {
    let m = x.len();
    if m == 0 {
        return Err(Error::Domain("empty point".into()));
    }
    let mut sorted: Vec<&Rational> = x.iter().collect();
    sorted.sort();
    let mut acc = Rational::zero();
    for (k, v) in sorted.iter().enumerate() {
        acc += *v;
        let bound = triangular(k + 1);
        if k + 1 < m && acc < bound {
            return Err(Error::Domain(format!(
                "point outside the permutahedron: {} smallest entries sum below {}",
                k + 1,
                bound
            )));
        }
        if k + 1 == m && acc != bound {
            return Err(Error::Domain(format!(
                "coordinates must sum to {bound}, got {acc}"
            )));
        }
    }
    Ok(())
}

/// The minimal face of `Π_m` containing `x`, read off from the chain of
/// tight prefix sums of the sorted coordinates. Parts are ordered by
/// increasing coordinate value.
pub fn minimal_face(x: &[Rational]) -> Result<Composition> {
    check_membership(x)?;
    let m = x.len();
    let mut order: Vec<usize> = (1..=m).collect();
    order.sort_by(|&i, &j| x[i - 1].cmp(&x[j - 1]).then(i.cmp(&j)));
    let mut parts = Vec::new();
    let mut current: BTreeSet<usize> = BTreeSet::new();
    let mut acc = Rational::zero();
    for (k, &i) in order.iter().enumerate() {
        current.insert(i);
        acc += &x[i - 1];
        if acc == triangular(k + 1) {
            parts.push(LeafLabel::new(std::mem::take(&mut current)).unwrap());
        }
    }
    debug_assert!(current.is_empty());
    Ok(Composition(parts))
}

/// Star-shaped decomposition of a point of `Π_m` around face centroids.
#[derive(Clone, Debug)]
pub enum StarForm {
    /// A vertex: the permutation vector itself.
    Vertex(Perm),
    /// The exact centroid of the face of this composition.
    Centroid(Composition),
    /// `coords = t * boundary + (1 - t) * centroid(face)` with
    /// `t ∈ (0, 1)` and `boundary` on the face's proper boundary.
    Interior {
        face: Composition,
        t: Rational,
        boundary: Box<PermPoint>,
    },
}

/// An exact rational point of `Π_m` together with its star decomposition.
#[derive(Clone, Debug)]
pub struct PermPoint {
    pub coords: Vec<Rational>,
    pub star: StarForm,
}

impl PermPoint {
    pub fn from_coords(coords: Vec<Rational>) -> Result<PermPoint> {
        let star = star_decompose(&coords)?;
        Ok(PermPoint { coords, star })
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }
}

fn star_decompose(x: &[Rational]) -> Result<StarForm> {
    let face = minimal_face(x)?;
    if face.parts().iter().all(|p| p.len() == 1) {
        let images: Vec<usize> = x
            .iter()
            .map(|v| {
                let i = v.to_integer();
                usize::try_from(i.clone()).ok().filter(|_| v.is_integer())
            })
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::Domain("vertex with non-integer coordinates".into()))?;
        return Ok(StarForm::Vertex(Perm::from_images(images)?));
    }
    let o = centroid(&face);
    if x == o.as_slice() {
        return Ok(StarForm::Centroid(face));
    }
    // largest λ with o + λ(x - o) still inside the face: per part, every
    // proper nonempty subset keeps its sum above the within-part bound
    let mut best: Option<Rational> = None;
    let mut prefix = 0usize;
    for part in face.parts() {
        let elems: Vec<usize> = part.elements().iter().copied().collect();
        let s = elems.len();
        for mask in 1..(1u64 << s) - 1 {
            let mut sum_x = Rational::zero();
            let mut sum_o = Rational::zero();
            let mut size = 0usize;
            for (b, &i) in elems.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    sum_x += &x[i - 1];
                    sum_o += &o[i - 1];
                    size += 1;
                }
            }
            let bound = triangular(size) + from_usize(prefix * size);
            if sum_x < sum_o {
                // λ ≤ (sum_o - bound) / (sum_o - sum_x)
                let lambda = (&sum_o - &bound) / (&sum_o - &sum_x);
                if best.as_ref().is_none_or(|b| lambda < *b) {
                    best = Some(lambda);
                }
            }
        }
        prefix += s;
    }
    let lambda = best.ok_or_else(|| {
        Error::Domain("ray from the face centroid does not exit the face".into())
    })?;
    debug_assert!(lambda > Rational::one());
    let y: Vec<Rational> = x
        .iter()
        .zip(&o)
        .map(|(xi, oi)| oi + &lambda * (xi - oi))
        .collect();
    let t = lambda.recip();
    let boundary = PermPoint::from_coords(y)?;
    Ok(StarForm::Interior {
        face,
        t,
        boundary: Box::new(boundary),
    })
}

/// The homeomorphism `Π_{n-1} → closed top cell`: maps a point of the
/// permutahedron to a smooth curve with `n` marked points (plus the implicit
/// point at infinity), normalized so the leftmost mark sits at 0 and the
/// maximum gap is 1. A vertex goes to a permutation point; moving toward a
/// face centroid scales the gaps internal to its parts.
pub fn phi(x: &PermPoint) -> Result<MarkedCurve> {
    let positions = phi_positions(x);
    MarkedCurve::smooth(&positions)
}

fn phi_positions(x: &PermPoint) -> Vec<Rational> {
    let m = x.m();
    let n = m + 1;
    match &x.star {
        StarForm::Vertex(sigma) => {
            // mark i at σ(i) - 1, mark n at m
            let mut out: Vec<Rational> = (1..=m)
                .map(|i| from_usize(sigma.apply(i) - 1))
                .collect();
            out.push(from_usize(m));
            out
        }
        StarForm::Centroid(face) => {
            let mut out = vec![Rational::zero(); n];
            for (j, part) in face.parts().iter().enumerate() {
                for &i in part.elements() {
                    out[i - 1] = from_usize(j);
                }
            }
            out[n - 1] = from_usize(face.num_parts());
            out
        }
        StarForm::Interior { face, t, boundary } => {
            let inner = phi_positions(boundary);
            scale_gaps_within_parts(&inner, face, t)
        }
    }
}

/// Scales by `t` every gap between consecutively placed marks lying in a
/// common part of `face`; other gaps (including the one before the last
/// mark) stay put.
fn scale_gaps_within_parts(
    positions: &[Rational],
    face: &Composition,
    t: &Rational,
) -> Vec<Rational> {
    let n = positions.len();
    let mut part_of = vec![usize::MAX; n + 1];
    for (j, part) in face.parts().iter().enumerate() {
        for &i in part.elements() {
            part_of[i] = j;
        }
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&i, &j| positions[i - 1].cmp(&positions[j - 1]).then(i.cmp(&j)));
    let mut out = vec![Rational::zero(); n];
    let mut cursor = Rational::zero();
    for k in 1..n {
        let (prev, here) = (order[k - 1], order[k]);
        let gap = &positions[here - 1] - &positions[prev - 1];
        let scaled = if part_of[prev] != usize::MAX && part_of[prev] == part_of[here] {
            &gap * t
        } else {
            gap
        };
        cursor += scaled;
        out[here - 1] = cursor.clone();
    }
    out
}

/// Inverse of [`phi`]: reads a smooth curve whose `n`-th mark is strictly
/// rightmost at a maximal gap, normalizes the gaps, and peels off the star
/// decomposition (`t` is the largest gap below 1).
pub fn theta(c: &MarkedCurve) -> Result<PermPoint> {
    let positions = c.smooth_mark_positions()?;
    let n = positions.len();
    if n < 2 {
        return Err(Error::Domain("need at least two marks".into()));
    }
    let last = &positions[n - 1];
    if positions[..n - 1].iter().any(|p| p >= last) {
        return Err(Error::Domain(
            "the last mark must be strictly rightmost".into(),
        ));
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&i, &j| positions[i - 1].cmp(&positions[j - 1]).then(i.cmp(&j)));
    let mut gaps: Vec<Rational> = (1..n)
        .map(|k| &positions[order[k] - 1] - &positions[order[k - 1] - 1])
        .collect();
    let max = gaps[n - 2].clone();
    if gaps.iter().any(|g| g > &max) {
        return Err(Error::Domain(
            "the gap before the last mark must be maximal".into(),
        ));
    }
    for g in &mut gaps {
        *g = &*g / &max;
    }
    theta_rec(&order, &gaps)
}

fn theta_rec(order: &[usize], gaps: &[Rational]) -> Result<PermPoint> {
    let n = order.len();
    let m = n - 1;
    let one = Rational::one();
    if gaps.iter().all(|g| g == &one) {
        // permutation point: coordinate of mark i is its rank
        let mut coords = vec![Rational::zero(); m];
        for (k, &i) in order.iter().enumerate().take(m) {
            coords[i - 1] = from_usize(k + 1);
        }
        return PermPoint::from_coords(coords);
    }
    // composition induced by the sub-unit gaps among the first n-1 marks
    let mut parts: Vec<LeafLabel> = Vec::new();
    let mut current: BTreeSet<usize> = BTreeSet::from([order[0]]);
    for k in 1..m {
        if gaps[k - 1] == one {
            parts.push(LeafLabel::new(std::mem::take(&mut current)).unwrap());
        }
        current.insert(order[k]);
    }
    parts.push(LeafLabel::new(current).unwrap());
    let face = Composition(parts);
    let o = centroid(&face);
    let t = gaps
        .iter()
        .filter(|g| *g < &one)
        .max()
        .cloned()
        .expect("some gap is below 1");
    if t.is_zero() {
        return Ok(PermPoint {
            coords: o,
            star: StarForm::Centroid(face),
        });
    }
    let scaled: Vec<Rational> = gaps
        .iter()
        .map(|g| {
            let s = g / &t;
            if s > one { one.clone() } else { s }
        })
        .collect();
    let boundary = theta_rec(order, &scaled)?;
    let coords: Vec<Rational> = boundary
        .coords
        .iter()
        .zip(&o)
        .map(|(yi, oi)| &t * yi + (&one - &t) * oi)
        .collect();
    check_membership(&coords)?;
    Ok(PermPoint {
        coords,
        star: StarForm::Interior {
            face,
            t,
            boundary: Box::new(boundary),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::rat;

    fn coords(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v, 1)).collect()
    }

    #[test]
    fn face_lattice_counts() {
        let m3 = face_lattice(3).unwrap();
        let count = |d: usize| m3.iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2)), (6, 6, 1));
        assert_eq!(m3.len(), 13);

        assert_eq!(face_lattice(1).unwrap().len(), 1);

        let m4 = face_lattice(4).unwrap();
        let count4 = |d: usize| m4.iter().filter(|f| f.dim == d).count();
        assert_eq!(
            (count4(0), count4(1), count4(2), count4(3)),
            (24, 36, 14, 1)
        );
    }

    #[test]
    fn centroid_of_whole_permutahedron() {
        let face = Composition::parse("{1,2,3}").unwrap();
        assert_eq!(centroid(&face), vec![rat(2, 1), rat(2, 1), rat(2, 1)]);
    }

    #[test]
    fn minimal_face_examples() {
        assert_eq!(
            minimal_face(&coords(&[2, 1, 3])).unwrap(),
            Composition::parse("{2}|{1}|{3}").unwrap()
        );
        assert_eq!(
            minimal_face(&coords(&[2, 2, 2])).unwrap(),
            Composition::parse("{1,2,3}").unwrap()
        );
        assert_eq!(
            minimal_face(&[rat(3, 2), rat(3, 2), rat(3, 1)]).unwrap(),
            Composition::parse("{1,2}|{3}").unwrap()
        );
    }

    #[test]
    fn minimal_face_of_centroid_is_its_face() {
        for face in compositions_of(4).unwrap() {
            assert_eq!(minimal_face(&centroid(&face)).unwrap(), face);
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        assert!(check_membership(&coords(&[1, 1, 4])).is_err());
        assert!(check_membership(&coords(&[1, 2, 4])).is_err());
    }

    #[test]
    fn phi_on_vertices() {
        // x = (2, 1, 3): marks 2, 1, 3, 4 from left to right, unit gaps
        let p = PermPoint::from_coords(coords(&[2, 1, 3])).unwrap();
        let c = phi(&p).unwrap();
        assert_eq!(
            c.smooth_mark_positions().unwrap(),
            vec![rat(1, 1), rat(0, 1), rat(2, 1), rat(3, 1)]
        );
    }

    #[test]
    fn phi_on_reference_centroid() {
        // composition ({1,3}, {2,5,6}, {4}, {7,8}) of [8]
        let face = Composition::parse("{1,3}|{2,5,6}|{4}|{7,8}").unwrap();
        let p = PermPoint::from_coords(centroid(&face)).unwrap();
        let c = phi(&p).unwrap();
        let expect: Vec<Rational> = coords(&[0, 1, 0, 2, 1, 1, 3, 3, 4]);
        assert_eq!(c.smooth_mark_positions().unwrap(), expect);
    }

    #[test]
    fn theta_on_permutation_point() {
        let c = MarkedCurve::smooth(&coords(&[1, 0, 2, 3])).unwrap();
        let p = theta(&c).unwrap();
        assert_eq!(p.coords, coords(&[2, 1, 3]));
        assert!(matches!(p.star, StarForm::Vertex(_)));
    }

    #[test]
    fn theta_rejects_bad_domain() {
        // last mark not rightmost
        let c = MarkedCurve::smooth(&coords(&[0, 3, 1, 2])).unwrap();
        assert!(theta(&c).is_err());
        // last gap not maximal
        let c = MarkedCurve::smooth(&coords(&[0, 5, 6, 7])).unwrap();
        assert!(theta(&c).is_err());
    }

    #[test]
    fn theta_phi_roundtrip_small() {
        let points = [
            coords(&[2, 1, 3]),
            vec![rat(3, 2), rat(3, 2), rat(3, 1)],
            vec![rat(7, 4), rat(5, 4), rat(3, 1)],
            vec![rat(2, 1), rat(2, 1), rat(2, 1)],
            vec![rat(5, 3), rat(4, 3), rat(3, 1)],
        ];
        for x in points {
            let p = PermPoint::from_coords(x.clone()).unwrap();
            let back = theta(&phi(&p).unwrap()).unwrap();
            assert_eq!(back.coords, x);
        }
    }

    #[test]
    fn phi_theta_roundtrip_on_curves() {
        let curves = [
            coords(&[0, 1, 2, 3]),
            vec![rat(0, 1), rat(1, 2), rat(3, 2), rat(5, 2)],
            vec![rat(1, 3), rat(0, 1), rat(4, 3), rat(7, 3)],
        ];
        for pos in curves {
            let c = MarkedCurve::smooth(&pos).unwrap();
            let back = phi(&theta(&c).unwrap()).unwrap();
            assert!(back.equivalent(&c), "normalized round trip failed");
            assert_eq!(back.smooth_mark_positions().unwrap(), pos);
        }
    }
}
