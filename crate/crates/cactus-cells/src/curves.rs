//! Exact-rational marked curves in rooted coordinates, the unweighted and
//! weighted distance algorithms, and the refined-cube coordinate maps.
//!
//! A curve is a tree of components; on each component the point toward the
//! root (for the root component, the extra marked point `x_{n+1}`) sits at
//! infinity, and the remaining special points carry finite rational
//! coordinates in increasing order. Coincident marked points are stored as a
//! single special point with a multi-element label set.

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::trees::{LeafLabel, Node, Tree, Variant};
use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Gaps between consecutively placed marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffVector(pub Vec<Rational>);

impl DiffVector {
    pub fn from_i64(entries: &[i64]) -> DiffVector {
        DiffVector(entries.iter().map(|&v| rat(v, 1)).collect())
    }

    /// Unweighted mode: every entry strictly positive.
    pub fn validate_unweighted(&self) -> Result<()> {
        if self.0.iter().any(|d| !d.is_positive()) {
            return Err(Error::Domain(
                "unweighted distance vector requires strictly positive entries".into(),
            ));
        }
        Ok(())
    }

    /// Weighted mode: entries nonnegative, and any maximal run of zero gaps
    /// spans at most `a` marked points.
    pub fn validate_weighted(&self, a: usize) -> Result<()> {
        if self.0.iter().any(Signed::is_negative) {
            return Err(Error::Domain("distance entries must be nonnegative".into()));
        }
        let mut run = 0usize;
        for d in &self.0 {
            if d.is_zero() {
                run += 1;
                if run + 1 > a {
                    return Err(Error::Unstable(format!(
                        "a zero-gap block spans more than {a} marked points"
                    )));
                }
            } else {
                run = 0;
            }
        }
        Ok(())
    }
}

/// One special point of a component: either a set of coincident marked
/// points or the node attaching a child component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointContent {
    Marks(LeafLabel),
    Child(Component),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPoint {
    pub pos: Rational,
    pub content: PointContent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub points: Vec<SpecialPoint>,
    pub oriented: bool,
}

/// A marked curve; the root component carries the implicit marked point at
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCurve {
    pub root: Component,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    points: Vec<PointJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    oriented: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointJson {
    Mark { pos: String, labels: Vec<usize> },
    Node { pos: String, child: ComponentJson },
}

impl MarkedCurve {
    /// Builds a smooth curve from the positions of marks `1..=n`
    /// (`positions[i]` is the coordinate of mark `i + 1`). Coincident marks
    /// merge into one special point.
    pub fn smooth(positions: &[Rational]) -> Result<MarkedCurve> {
        let mut by_pos: BTreeMap<Rational, BTreeSet<usize>> = BTreeMap::new();
        for (i, p) in positions.iter().enumerate() {
            by_pos.entry(p.clone()).or_default().insert(i + 1);
        }
        let points = by_pos
            .into_iter()
            .map(|(pos, labels)| {
                Ok(SpecialPoint {
                    pos,
                    content: PointContent::Marks(LeafLabel::new(labels)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let curve = MarkedCurve {
            root: Component {
                points,
                oriented: false,
            },
        };
        curve.validate_structure()?;
        Ok(curve)
    }

    /// Positions of marks `1..=n` for a smooth (single-component) curve.
    pub fn smooth_mark_positions(&self) -> Result<Vec<Rational>> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for pt in &self.root.points {
            match &pt.content {
                PointContent::Marks(l) => {
                    for &e in l.elements() {
                        out.insert(e, pt.pos.clone());
                    }
                }
                PointContent::Child(_) => {
                    return Err(Error::Domain("curve is not smooth".into()))
                }
            }
        }
        let n = out.len();
        if out.keys().copied().ne(1..=n) {
            return Err(Error::Malformed("marks do not cover 1..=n".into()));
        }
        Ok(out.into_values().collect())
    }

    pub fn from_json(s: &str) -> Result<MarkedCurve> {
        let raw: ComponentJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad curve JSON: {e}")))?;
        let root = component_from_json(raw)?;
        let curve = MarkedCurve { root };
        curve.validate_structure()?;
        Ok(curve)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&component_to_json(&self.root)).expect("serializable")
    }

    /// Ground-set size: number of marked points.
    pub fn n(&self) -> usize {
        fn walk(c: &Component) -> usize {
            c.points
                .iter()
                .map(|p| match &p.content {
                    PointContent::Marks(l) => l.len(),
                    PointContent::Child(ch) => walk(ch),
                })
                .sum()
        }
        walk(&self.root)
    }

    /// Structural validity: strictly increasing coordinates per component,
    /// at least two stored special points per component (three counting the
    /// point at infinity), disjoint labels covering `[n]`.
    pub fn validate_structure(&self) -> Result<()> {
        fn walk(c: &Component, seen: &mut BTreeSet<usize>) -> Result<()> {
            if c.points.len() < 2 {
                return Err(Error::Unstable(
                    "component with fewer than 3 special points".into(),
                ));
            }
            for w in c.points.windows(2) {
                if w[0].pos >= w[1].pos {
                    return Err(Error::Malformed(
                        "special points must have strictly increasing coordinates".into(),
                    ));
                }
            }
            for p in &c.points {
                match &p.content {
                    PointContent::Marks(l) => {
                        for &e in l.elements() {
                            if !seen.insert(e) {
                                return Err(Error::Malformed(format!(
                                    "mark {e} appears twice"
                                )));
                            }
                        }
                    }
                    PointContent::Child(ch) => walk(ch, seen)?,
                }
            }
            Ok(())
        }
        let mut seen = BTreeSet::new();
        walk(&self.root, &mut seen)?;
        let n = seen.len();
        if n < 2 {
            return Err(Error::Domain("need at least 2 marked points".into()));
        }
        if seen.iter().copied().ne(1..=n) {
            return Err(Error::Malformed(format!("marks do not cover 1..={n}")));
        }
        Ok(())
    }

    /// Weighted stability: every coincidence class has at most `a` marks.
    pub fn validate_a_stable(&self, a: usize) -> Result<()> {
        self.validate_structure()?;
        let n = self.n();
        if a == 0 || a >= n {
            return Err(Error::Domain(format!("need 1 <= a <= n-1, got a={a}, n={n}")));
        }
        fn walk(c: &Component, a: usize) -> Result<()> {
            for p in &c.points {
                match &p.content {
                    PointContent::Marks(l) if l.len() > a => {
                        return Err(Error::Unstable(format!(
                            "{} coincident marks exceed the weight bound {a}",
                            l.len()
                        )))
                    }
                    PointContent::Child(ch) => walk(ch, a)?,
                    _ => {}
                }
            }
            Ok(())
        }
        walk(&self.root, a)
    }

    /// Normal form for curve equality: per component, translate the leftmost
    /// special point to 0 and scale the largest gap to 1; each component may
    /// be reflected (the root only when unoriented). Two curves are equal as
    /// moduli points iff their normal forms coincide.
    pub fn canonical_form(&self) -> String {
        canonical_component(&self.root, self.root.oriented)
    }

    pub fn equivalent(&self, other: &MarkedCurve) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

fn component_from_json(raw: ComponentJson) -> Result<Component> {
    let mut points = Vec::new();
    for p in raw.points {
        let (pos, content) = match p {
            PointJson::Mark { pos, labels } => (
                parse_rational(&pos)?,
                PointContent::Marks(LeafLabel::new(labels.into_iter().collect())?),
            ),
            PointJson::Node { pos, child } => (
                parse_rational(&pos)?,
                PointContent::Child(component_from_json(child)?),
            ),
        };
        points.push(SpecialPoint { pos, content });
    }
    // merge coincident marks so stored points are strictly increasing
    points.sort_by(|x, y| x.pos.cmp(&y.pos));
    let mut merged: Vec<SpecialPoint> = Vec::new();
    for pt in points {
        match merged.last_mut() {
            Some(last) if last.pos == pt.pos => {
                let (PointContent::Marks(a), PointContent::Marks(b)) =
                    (&mut last.content, &pt.content)
                else {
                    return Err(Error::Malformed(
                        "a node may not coincide with another special point".into(),
                    ));
                };
                let union: BTreeSet<usize> = a
                    .elements()
                    .iter()
                    .chain(b.elements().iter())
                    .copied()
                    .collect();
                if union.len() != a.len() + b.len() {
                    return Err(Error::Malformed("mark appears twice".into()));
                }
                *a = LeafLabel::new(union)?;
            }
            _ => merged.push(pt),
        }
    }
    Ok(Component {
        points: merged,
        oriented: raw.oriented,
    })
}

fn component_to_json(c: &Component) -> ComponentJson {
    ComponentJson {
        points: c
            .points
            .iter()
            .map(|p| match &p.content {
                PointContent::Marks(l) => PointJson::Mark {
                    pos: p.pos.to_string(),
                    labels: l.elements().iter().copied().collect(),
                },
                PointContent::Child(ch) => PointJson::Node {
                    pos: p.pos.to_string(),
                    child: component_to_json(ch),
                },
            })
            .collect(),
        oriented: c.oriented,
    }
}

fn canonical_component(c: &Component, oriented: bool) -> String {
    let render = |pts: &[(Rational, String)]| -> String {
        let min = &pts.first().unwrap().0;
        let max_gap = pts
            .windows(2)
            .map(|w| &w[1].0 - &w[0].0)
            .max()
            .unwrap_or_else(Rational::one);
        let scale = if max_gap.is_zero() { Rational::one() } else { max_gap };
        let parts: Vec<String> = pts
            .iter()
            .map(|(pos, content)| format!("{}@{}", (pos - min) / &scale, content))
            .collect();
        format!("[{}]", parts.join(";"))
    };
    let pts: Vec<(Rational, String)> = c
        .points
        .iter()
        .map(|p| {
            let content = match &p.content {
                PointContent::Marks(l) => l.to_string(),
                PointContent::Child(ch) => canonical_component(ch, false),
            };
            (p.pos.clone(), content)
        })
        .collect();
    let fwd = render(&pts);
    if oriented {
        return fwd;
    }
    let mut rev: Vec<(Rational, String)> = pts
        .iter()
        .rev()
        .map(|(pos, content)| (-pos.clone(), content.clone()))
        .collect();
    let rev = {
        rev.sort_by(|x, y| x.0.cmp(&y.0));
        render(&rev)
    };
    fwd.min(rev)
}

/// Outcome of one distance-algorithm run: the tree over the given atoms plus
/// the merge distance of every created internal vertex, keyed by the
/// serialized label union below it.
struct MergeRun {
    node: Node,
    merge_dist: BTreeMap<String, Rational>,
}

fn below_key(node: &Node) -> String {
    LeafLabel::new(node.label_union()).expect("nonempty union").to_string()
}

/// Core of the distance algorithm: repeatedly merge maximal runs of the
/// minimum remaining gap. With `compress_at = Some(a)`, a newly created
/// vertex of mass at most `a` collapses to a leaf.
fn run_distance(mut atoms: Vec<Node>, mut gaps: Vec<Rational>, compress_at: Option<usize>) -> MergeRun {
    debug_assert_eq!(atoms.len(), gaps.len() + 1);
    debug_assert!(gaps.iter().all(Signed::is_positive));
    let mut merge_dist = BTreeMap::new();
    while !gaps.is_empty() {
        let d = gaps.iter().min().unwrap().clone();
        let mut new_atoms: Vec<Node> = Vec::new();
        let mut new_gaps: Vec<Rational> = Vec::new();
        let mut i = 0;
        while i < atoms.len() {
            // extend a maximal run of gaps equal to d starting at atom i
            let mut j = i;
            while j < gaps.len() && gaps[j] == d {
                j += 1;
            }
            let merged = if j > i {
                let group: Vec<Node> = atoms[i..=j].to_vec();
                let vertex = Node::internal(group);
                merge_dist.insert(below_key(&vertex), d.clone());
                match compress_at {
                    Some(a) if vertex.mass() <= a => {
                        Node::Leaf(LeafLabel::new(vertex.label_union()).unwrap())
                    }
                    _ => vertex,
                }
            } else {
                atoms[i].clone()
            };
            if !new_atoms.is_empty() {
                new_gaps.push(gaps[i - 1].clone());
            }
            new_atoms.push(merged);
            i = j + 1;
        }
        atoms = new_atoms;
        gaps = new_gaps;
    }
    debug_assert_eq!(atoms.len(), 1);
    MergeRun {
        node: atoms.pop().unwrap(),
        merge_dist,
    }
}

/// The distance algorithm: builds the plain rooted tree whose leaves spell
/// `order` left to right, merging smaller gaps first.
pub fn distance_tree(order: &Perm, d: &DiffVector) -> Result<Tree> {
    d.validate_unweighted()?;
    let n = order.n();
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    if d.0.len() + 1 != n {
        return Err(Error::Domain(format!(
            "expected {} gaps for n={n}, got {}",
            n - 1,
            d.0.len()
        )));
    }
    let atoms: Vec<Node> = order
        .one_line()
        .iter()
        .map(|&v| Node::Leaf(LeafLabel::singleton(v)))
        .collect();
    let run = run_distance(atoms, d.0.clone(), None);
    Ok(Tree::new(run.node, Variant::Plain))
}

/// The weighted distance algorithm: zero gaps merge into leaf blocks first,
/// and every merge producing a subtree of mass at most `a` compresses to a
/// single leaf. Agrees with compressing the unweighted output when all gaps
/// are positive.
pub fn distance_tree_weighted(order: &Perm, d: &DiffVector, a: usize) -> Result<Tree> {
    let n = order.n();
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    if a == 0 || a >= n {
        return Err(Error::Domain(format!("need 1 <= a <= n-1, got a={a}, n={n}")));
    }
    if d.0.len() + 1 != n {
        return Err(Error::Domain(format!(
            "expected {} gaps for n={n}, got {}",
            n - 1,
            d.0.len()
        )));
    }
    d.validate_weighted(a)?;
    // pre-merge zero-gap runs into multi-label leaves
    let mut atoms: Vec<Node> = Vec::new();
    let mut gaps: Vec<Rational> = Vec::new();
    let mut block: BTreeSet<usize> = BTreeSet::from([order.apply(1)]);
    for (i, gap) in d.0.iter().enumerate() {
        if gap.is_zero() {
            block.insert(order.apply(i + 2));
        } else {
            atoms.push(Node::Leaf(LeafLabel::new(std::mem::take(&mut block)).unwrap()));
            block.insert(order.apply(i + 2));
            gaps.push(gap.clone());
        }
    }
    atoms.push(Node::Leaf(LeafLabel::new(block).unwrap()));
    let run = run_distance(atoms, gaps, Some(a));
    Ok(Tree::new(run.node, Variant::Plain))
}

/// Tree computation over a whole curve: per-component distance runs grafted
/// along the component tree. Component roots come back flagged flippable;
/// `ratios` collects, for every within-component internal edge, the ratio of
/// the child's merge distance to its parent's.
fn curve_tree(
    comp: &Component,
    weighted_a: Option<usize>,
    ratios: &mut BTreeMap<String, Rational>,
) -> Result<Node> {
    let mut atoms: Vec<Node> = Vec::new();
    let mut gaps: Vec<Rational> = Vec::new();
    for (i, pt) in comp.points.iter().enumerate() {
        if i > 0 {
            gaps.push(&pt.pos - &comp.points[i - 1].pos);
        }
        let atom = match &pt.content {
            PointContent::Marks(l) => {
                if weighted_a.is_none() && l.len() > 1 {
                    return Err(Error::Unstable(
                        "coincident marks need the weighted algorithm".into(),
                    ));
                }
                Node::Leaf(l.clone())
            }
            PointContent::Child(ch) => curve_tree(ch, weighted_a, ratios)?,
        };
        atoms.push(atom);
    }
    let run = run_distance(atoms, gaps, weighted_a);
    // ratios for edges internal to this component: the flippable flag marks
    // grafted component roots, where this component's coordinates stop
    fn collect(node: &Node, parent_dist: Option<&Rational>, dists: &BTreeMap<String, Rational>, ratios: &mut BTreeMap<String, Rational>) {
        let Node::Internal {
            children,
            flippable,
        } = node
        else {
            return;
        };
        if *flippable {
            return;
        }
        let key = below_key(node);
        let d = &dists[&key];
        if let Some(pd) = parent_dist {
            ratios.insert(key, d / pd);
        }
        for c in children {
            collect(c, Some(d), dists, ratios);
        }
    }
    collect(&run.node, None, &run.merge_dist, ratios);
    // the component root becomes a graft point (or the global root)
    let mut node = run.node;
    match &mut node {
        Node::Internal { flippable, .. } => *flippable = true,
        Node::Leaf(_) => {
            return Err(Error::Unstable(
                "component collapsed to a single point".into(),
            ))
        }
    }
    Ok(node)
}

/// Refined tree of a curve: the per-component distance trees grafted
/// together, flippable exactly at the component roots. For an oriented
/// curve the global root stays non-flippable.
pub fn tau_little(c: &MarkedCurve) -> Result<Tree> {
    c.validate_a_stable(1)?;
    let mut ratios = BTreeMap::new();
    let mut root = curve_tree(&c.root, None, &mut ratios)?;
    if c.root.oriented {
        if let Node::Internal { flippable, .. } = &mut root {
            *flippable = false;
        }
    }
    Ok(Tree::from_parts(root, Variant::Refined))
}

/// Stable tree of a curve: the refined tree with every vertex flippable,
/// canonicalized. Oriented curves land in the double-cover variant.
pub fn tau_big(c: &MarkedCurve) -> Result<Tree> {
    c.validate_a_stable(1)?;
    let mut ratios = BTreeMap::new();
    let root = curve_tree(&c.root, None, &mut ratios)?;
    let variant = if c.root.oriented {
        Variant::DoubleCoverStable
    } else {
        Variant::Stable
    };
    Ok(Tree::new(root, variant).canonicalize())
}

/// Weighted stable tree of a curve, computed by the weighted distance
/// algorithm per component. Equals compressing [`tau_big`] when the curve
/// has no coincident marks.
pub fn tau_big_a(c: &MarkedCurve, a: usize) -> Result<Tree> {
    c.validate_a_stable(a)?;
    let mut ratios = BTreeMap::new();
    let root = curve_tree(&c.root, Some(a), &mut ratios)?;
    let variant = if c.root.oriented {
        Variant::DoubleCoverStable
    } else {
        Variant::Stable
    };
    Ok(Tree::new(root, variant).canonicalize())
}

/// Standard tree of a curve: one internal vertex per component, leaves the
/// coincidence classes of marks, children ordered by coordinate.
pub fn tau_std(c: &MarkedCurve, a: usize) -> Result<Tree> {
    c.validate_a_stable(a)?;
    fn walk(comp: &Component) -> Node {
        Node::internal(
            comp.points
                .iter()
                .map(|p| match &p.content {
                    PointContent::Marks(l) => Node::Leaf(l.clone()),
                    PointContent::Child(ch) => walk(ch),
                })
                .collect(),
        )
    }
    let variant = if c.root.oriented {
        Variant::DoubleCoverStable
    } else {
        Variant::Stable
    };
    Ok(Tree::new(walk(&c.root), variant).canonicalize())
}

/// Edge coordinates of a curve within its refined cell: for each internal
/// edge `(u, v)` of `tau` whose child `v` is not flippable, the ratio of the
/// gap merged at `v` to the gap merged at `u`. Keys are the serialized label
/// set below `v`. Errors when the curve does not lie in the cell of `tau`.
pub fn theta_tau(c: &MarkedCurve, tau: &Tree) -> Result<BTreeMap<String, Rational>> {
    c.validate_a_stable(1)?;
    let mut ratios = BTreeMap::new();
    let mut root = curve_tree(&c.root, None, &mut ratios)?;
    if c.root.oriented {
        if let Node::Internal { flippable, .. } = &mut root {
            *flippable = false;
        }
    }
    let mine = Tree::from_parts(root, Variant::Refined).canonicalize();
    if mine != tau.canonicalize() {
        return Err(Error::Domain(format!(
            "curve lies in the cell of {mine}, not of {tau}"
        )));
    }
    Ok(ratios)
}

/// Inverse of [`theta_tau`]: builds the curve in the refined cell of `tau`
/// with the given edge coordinates, all in `(0, 1)`. Within a component the
/// first special point sits at 0 and successive gaps are products of edge
/// coordinates along root paths; grafted components are built recursively.
pub fn phi_tau(tau: &Tree, r: &BTreeMap<String, Rational>) -> Result<MarkedCurve> {
    for (k, v) in r {
        if !v.is_positive() || v >= &Rational::one() {
            return Err(Error::Domain(format!(
                "edge coordinate for {k} must lie in (0,1), got {v}"
            )));
        }
    }
    let expected = non_flippable_edge_keys(tau);
    let got: BTreeSet<String> = r.keys().cloned().collect();
    if expected != got {
        return Err(Error::Domain(format!(
            "edge coordinates must be indexed by {expected:?}, got {got:?}"
        )));
    }
    let root = build_component(tau.root(), r)?;
    let curve = MarkedCurve { root };
    curve.validate_structure()?;
    Ok(curve)
}

/// Keys of the internal edges of `tau` whose child is not flippable. Edges
/// into flippable vertices are graft edges between components and carry no
/// coordinate.
pub fn non_flippable_edge_keys(tau: &Tree) -> BTreeSet<String> {
    fn walk(node: &Node, is_root: bool, out: &mut BTreeSet<String>) {
        if let Node::Internal {
            children,
            flippable,
        } = node
        {
            if !is_root && !*flippable {
                out.insert(below_key(node));
            }
            for c in children {
                walk(c, false, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(tau.root(), true, &mut out);
    out
}

/// Builds the curve component for the region rooted at `node` (a flippable
/// vertex or the global root). Boundary objects of the region are leaves and
/// deeper flippable vertices; the gap between consecutive boundary objects
/// is the product of edge coordinates along the path from the component root
/// to their nearest common ancestor (the empty product is 1).
fn build_component(node: &Node, r: &BTreeMap<String, Rational>) -> Result<Component> {
    struct Boundary<'a> {
        pos: Rational,
        node: &'a Node,
    }
    /// `prod` is the product of edge coordinates from the component root
    /// down to `node` inclusive; gaps between consecutive child blocks of
    /// `node` equal `prod`.
    fn lay_out<'a>(
        node: &'a Node,
        prod: &Rational,
        r: &BTreeMap<String, Rational>,
        out: &mut Vec<Boundary<'a>>,
        cursor: &mut Rational,
    ) {
        let Node::Internal { children, .. } = node else {
            unreachable!("lay_out visits region-internal vertices only");
        };
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                *cursor = &*cursor + prod;
            }
            match c {
                Node::Leaf(_) | Node::Internal { flippable: true, .. } => out.push(Boundary {
                    pos: cursor.clone(),
                    node: c,
                }),
                Node::Internal { .. } => {
                    let child_prod = prod * &r[&below_key(c)];
                    lay_out(c, &child_prod, r, out, cursor);
                }
            }
        }
    }
    if node.is_leaf() {
        return Err(Error::Domain("component root must be internal".into()));
    }
    let mut boundaries = Vec::new();
    let mut cursor = Rational::zero();
    lay_out(node, &Rational::one(), r, &mut boundaries, &mut cursor);
    let points = boundaries
        .into_iter()
        .map(|b| {
            let content = match b.node {
                Node::Leaf(l) => PointContent::Marks(l.clone()),
                inner => PointContent::Child(build_component(inner, r)?),
            };
            Ok(SpecialPoint {
                pos: b.pos,
                content,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Component {
        points,
        oriented: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positions(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v, 1)).collect()
    }

    #[test]
    fn distance_tree_merges_smallest_first() {
        // gaps of the positions 0, 1, 2, 4, 5, 13/2
        let d = DiffVector(vec![rat(1, 1), rat(1, 1), rat(2, 1), rat(1, 1), rat(3, 2)]);
        let t = distance_tree(&Perm::identity(6), &d).unwrap();
        assert_eq!(t.serialize(), "(({1} {2} {3}) (({4} {5}) {6}))");
    }

    #[test]
    fn distance_tree_equal_gaps_single_vertex() {
        let order = Perm::from_images(vec![2, 4, 1, 3]).unwrap();
        let d = DiffVector::from_i64(&[3, 3, 3]);
        let t = distance_tree(&order, &d).unwrap();
        assert_eq!(t.serialize(), "({2} {4} {1} {3})");
    }

    #[test]
    fn distance_tree_alternating_gaps_binary() {
        let d = DiffVector(vec![rat(1, 1), rat(2, 1), rat(1, 1), rat(3, 1)]);
        let t = distance_tree(&Perm::identity(5), &d).unwrap();
        fn binary(node: &Node) -> bool {
            match node {
                Node::Leaf(_) => true,
                Node::Internal { children, .. } => {
                    children.len() == 2 && children.iter().all(binary)
                }
            }
        }
        assert!(binary(t.root()));
    }

    #[test]
    fn distance_tree_rejects_zero_gap() {
        let d = DiffVector(vec![rat(1, 1), rat(0, 1)]);
        assert!(distance_tree(&Perm::identity(3), &d).is_err());
    }

    #[test]
    fn weighted_distance_examples() {
        // n=4, a=3: the hexagon cell's tree
        let t = distance_tree_weighted(&Perm::identity(4), &DiffVector::from_i64(&[1, 1, 2]), 3)
            .unwrap();
        assert_eq!(t.serialize(), "({1,2,3} {4})");

        // a=1 agrees with the unweighted algorithm
        let d = DiffVector(vec![rat(1, 1), rat(1, 1), rat(2, 1), rat(1, 1), rat(3, 2)]);
        let w = distance_tree_weighted(&Perm::identity(6), &d, 1).unwrap();
        let u = distance_tree(&Perm::identity(6), &d).unwrap();
        assert_eq!(w, u);
    }

    #[test]
    fn weighted_distance_zero_gaps() {
        // marks 1 and 2 coincide; the pair then merges with mark 3, but the
        // resulting vertex has mass 3 > a = 2 and stays internal
        let d = DiffVector(vec![rat(0, 1), rat(1, 1), rat(4, 1)]);
        let t = distance_tree_weighted(&Perm::identity(4), &d, 2).unwrap();
        assert_eq!(t.serialize(), "(({1,2} {3}) {4})");
        // zero block spanning 3 > a = 2 marks is rejected
        let d = DiffVector(vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(matches!(
            distance_tree_weighted(&Perm::identity(4), &d, 2),
            Err(Error::Unstable(_))
        ));
    }

    #[test]
    fn weighted_agrees_with_compression() {
        let order = Perm::from_images(vec![3, 1, 4, 2, 5]).unwrap();
        let d = DiffVector(vec![rat(1, 2), rat(1, 2), rat(5, 1), rat(1, 3)]);
        for a in 1..=4 {
            let direct = distance_tree_weighted(&order, &d, a).unwrap();
            let compressed = distance_tree(&order, &d).unwrap().compress(a).unwrap();
            assert_eq!(direct, compressed);
        }
    }

    #[test]
    fn example_curve_n7_a3() {
        // gaps (1, 1, 8, 2, 4, 2): within-block gaps below the separating
        // levels give leaves {1,2,3}, {4,5}, {6,7}
        let c = MarkedCurve::smooth(&positions(&[0, 1, 2, 10, 12, 16, 18])).unwrap();
        let t = tau_big_a(&c, 3).unwrap();
        let expect = Tree::parse_as("({1,2,3} ({4,5} {6,7}))", Variant::Stable)
            .unwrap()
            .canonicalize();
        assert_eq!(t, expect);
    }

    #[test]
    fn tau_std_examples() {
        // all marks distinct: height-1 tree with singleton leaves
        let c = MarkedCurve::smooth(&positions(&[3, 0, 7, 1])).unwrap();
        let t = tau_std(&c, 2).unwrap();
        assert_eq!(t, Tree::parse_as("({2} {4} {1} {3})", Variant::Stable).unwrap().canonicalize());

        // coincidence grouping: positions (0, 0, 1, 5) for marks 1..4
        let c = MarkedCurve::smooth(&positions(&[0, 0, 1, 5])).unwrap();
        let t = tau_std(&c, 2).unwrap();
        assert_eq!(t, Tree::parse_as("({1,2} {3} {4})", Variant::Stable).unwrap().canonicalize());
    }

    /// The four-component curve with marks 1..10: components (1 2 3),
    /// (5 (6 7 8) 9), and the root carrying 4 and 10.
    fn four_component_curve() -> MarkedCurve {
        let json = r#"{"points": [
            {"pos": "0", "child": {"points": [
                {"pos": "0", "labels": [1]}, {"pos": "1", "labels": [2]}, {"pos": "2", "labels": [3]}
            ]}},
            {"pos": "1", "labels": [4]},
            {"pos": "2", "child": {"points": [
                {"pos": "0", "labels": [5]},
                {"pos": "1", "child": {"points": [
                    {"pos": "0", "labels": [6]}, {"pos": "1", "labels": [7]}, {"pos": "2", "labels": [8]}
                ]}},
                {"pos": "2", "labels": [9]}
            ]}},
            {"pos": "3", "labels": [10]}
        ]}"#;
        MarkedCurve::from_json(json).unwrap()
    }

    #[test]
    fn tau_std_four_components() {
        let c = four_component_curve();
        let t = tau_std(&c, 1).unwrap();
        let expect = Tree::parse_as(
            "(({1} {2} {3}) {4} ({5} ({6} {7} {8}) {9}) {10})",
            Variant::Stable,
        )
        .unwrap()
        .canonicalize();
        assert_eq!(t, expect);
        assert_eq!(t.standard_dim(), 5);
    }

    #[test]
    fn tau_little_flippable_at_component_roots() {
        let c = four_component_curve();
        let t = tau_little(&c).unwrap();
        // evenly spaced points per component: each component merges at one
        // vertex, so the refined tree has every internal vertex flippable
        assert_eq!(t.flippable_positions().len(), 4);
        // and tau_big then agrees with the standard tree
        assert_eq!(tau_big(&c).unwrap(), tau_std(&c, 1).unwrap());
    }

    #[test]
    fn tau_little_smooth_root_only() {
        let c = MarkedCurve::smooth(&positions(&[0, 1, 2, 4])).unwrap();
        let t = tau_little(&c).unwrap();
        assert_eq!(t.flippable_positions(), vec![0]);
    }

    #[test]
    fn tau_big_identity_point() {
        let c = MarkedCurve::smooth(&positions(&[1, 2, 3, 4, 5])).unwrap();
        let t = tau_big(&c).unwrap();
        assert_eq!(t, Tree::parse_as("({1} {2} {3} {4} {5})", Variant::Stable).unwrap().canonicalize());
    }

    #[test]
    fn theta_values_on_reference_curve() {
        // positions 0, 1, 2, 4, 5, 13/2
        let mut pos = positions(&[0, 1, 2, 4, 5]);
        pos.push(rat(13, 2));
        let c = MarkedCurve::smooth(&pos).unwrap();
        let tau = tau_little(&c).unwrap();
        let theta = theta_tau(&c, &tau).unwrap();
        let expect: BTreeMap<String, Rational> = BTreeMap::from([
            ("{1,2,3}".to_string(), rat(1, 2)),
            ("{4,5,6}".to_string(), rat(3, 4)),
            ("{4,5}".to_string(), rat(2, 3)),
        ]);
        assert_eq!(theta, expect);
    }

    #[test]
    fn theta_rejects_wrong_cell() {
        let c = MarkedCurve::smooth(&positions(&[0, 1, 2, 3])).unwrap();
        let tau = Tree::parse("*(({1} {2}) {3} {4})").unwrap();
        assert!(theta_tau(&c, &tau).is_err());
    }

    #[test]
    fn phi_no_internal_edges_evenly_spaced() {
        let tau = Tree::parse("*({1} {2} {3} {4})").unwrap();
        let c = phi_tau(&tau, &BTreeMap::new()).unwrap();
        assert_eq!(c.smooth_mark_positions().unwrap(), positions(&[0, 1, 2, 3]));
    }

    #[test]
    fn phi_theta_roundtrip() {
        let tau = tau_little(&MarkedCurve::smooth(&{
            let mut p = positions(&[0, 1, 2, 4, 5]);
            p.push(rat(13, 2));
            p
        }).unwrap()).unwrap();
        let r: BTreeMap<String, Rational> = BTreeMap::from([
            ("{1,2,3}".to_string(), rat(1, 2)),
            ("{4,5,6}".to_string(), rat(3, 4)),
            ("{4,5}".to_string(), rat(2, 3)),
        ]);
        let c = phi_tau(&tau, &r).unwrap();
        assert_eq!(tau_little(&c).unwrap().canonicalize(), tau.canonicalize());
        assert_eq!(theta_tau(&c, &tau).unwrap(), r);
        // and the curve reproduces the reference positions up to affine maps
        let reference = MarkedCurve::smooth(&{
            let mut p = positions(&[0, 1, 2, 4, 5]);
            p.push(rat(13, 2));
            p
        }).unwrap();
        assert!(c.equivalent(&reference));
    }

    #[test]
    fn orientation_reversal_flips_at_root() {
        let fwd = MarkedCurve::smooth(&positions(&[0, 1, 3, 4])).unwrap();
        let rev = MarkedCurve::smooth(&positions(&[4, 3, 1, 0])).unwrap();
        assert_eq!(tau_big(&fwd).unwrap(), tau_big(&rev).unwrap());
    }

    #[test]
    fn curve_json_roundtrip() {
        let c = four_component_curve();
        let again = MarkedCurve::from_json(&c.to_json()).unwrap();
        assert_eq!(c, again);
        assert!(c.equivalent(&again));
    }

}
