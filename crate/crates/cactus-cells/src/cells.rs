//! The dual cell complex of the weighted moduli space (and of its double
//! cover), indexed by a-stable trees: dimensions, f-vectors, Euler
//! characteristics, polytope face counts, the symmetric-group action on
//! cells, and the classified 2-skeleton at the identity base point.

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::trees::{enumerate_a_stable, Composition, LeafLabel, Node, Tree, Variant};
use std::collections::{BTreeSet, HashMap};

/// Which space the complex models: the moduli space itself or its double
/// cover by curves oriented at the last marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Base,
    Double,
}

impl CoverKind {
    pub fn variant(self) -> Variant {
        match self {
            CoverKind::Base => Variant::Stable,
            CoverKind::Double => Variant::DoubleCoverStable,
        }
    }
}

/// One cell: a canonical a-stable tree with derived metadata.
#[derive(Clone, Debug)]
pub struct Cell {
    pub tree: Tree,
    pub dim: usize,
    pub composition: Composition,
    pub internal_edges: usize,
}

impl Cell {
    fn new(tree: Tree) -> Cell {
        let dim = tree.dim();
        let composition = tree.composition();
        let internal_edges = tree.internal_edge_count();
        Cell {
            tree,
            dim,
            composition,
            internal_edges,
        }
    }
}

/// The dual cell complex, optionally truncated above some dimension and
/// optionally carrying the covering face relation.
pub struct CellComplex {
    pub n: usize,
    pub a: usize,
    pub cover: CoverKind,
    pub max_dim: Option<usize>,
    pub cells: Vec<Cell>,
    index: HashMap<String, usize>,
    pub by_dim: Vec<Vec<usize>>,
    /// For each cell, the ids of the cells it covers (its codimension-1
    /// faces). Present only when built with faces.
    pub faces_down: Option<Vec<Vec<usize>>>,
}

impl CellComplex {
    pub fn cell_id(&self, tree: &Tree) -> Option<usize> {
        self.index.get(&tree.canonical_key()).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn zero_cells(&self) -> &[usize] {
        &self.by_dim[0]
    }
}

/// Builds the complex for `(n, a)`. With `max_dim`, only cells of dimension
/// at most `max_dim` are enumerated; the Euler characteristic is then
/// unavailable. `with_faces` additionally computes the covering relation.
pub fn build_complex(
    n: usize,
    a: usize,
    cover: CoverKind,
    max_dim: Option<usize>,
    with_faces: bool,
) -> Result<CellComplex> {
    let trees = enumerate_a_stable(n, a, cover.variant(), max_dim)?;
    let cells: Vec<Cell> = trees.into_iter().map(Cell::new).collect();
    let mut index = HashMap::new();
    let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (id, cell) in cells.iter().enumerate() {
        index.insert(cell.tree.serialize(), id);
        by_dim[cell.dim].push(id);
    }
    let faces_down = if with_faces {
        let mut down = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut ids = Vec::new();
            for f in cell.tree.covers() {
                let key = f.serialize();
                let id = *index.get(&key).ok_or_else(|| {
                    Error::Domain(format!("face {key} missing from the complex"))
                })?;
                ids.push(id);
            }
            ids.sort_unstable();
            down.push(ids);
        }
        Some(down)
    } else {
        None
    };
    Ok(CellComplex {
        n,
        a,
        cover,
        max_dim,
        cells,
        index,
        by_dim,
        faces_down,
    })
}

/// Alternating sum of cell counts. Requires an untruncated complex.
pub fn euler_characteristic(cx: &CellComplex) -> Result<i64> {
    if cx.max_dim.is_some() && cx.max_dim < Some(cx.n.saturating_sub(2)) {
        return Err(Error::Domain(
            "Euler characteristic needs the untruncated complex".into(),
        ));
    }
    Ok(cx
        .cells
        .iter()
        .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// Euler characteristic computed from the standard-cell dimensions (the sum
/// of `c(v) - 2` over internal vertices) over the same index set of trees.
pub fn euler_characteristic_standard(n: usize, a: usize, cover: CoverKind) -> Result<i64> {
    let trees = enumerate_a_stable(n, a, cover.variant(), None)?;
    Ok(trees
        .iter()
        .map(|t| if t.standard_dim() % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// Number of ordered set partitions of an `m`-set into `t` parts, for
/// `t = 1..=m`, as face counts of `Π_m` indexed by dimension `m - t`.
fn permutahedron_face_counts(m: usize) -> Vec<u64> {
    // osp[t] = t * (osp_prev[t] + osp_prev[t - 1])
    let mut osp = vec![0u64; m + 1];
    osp[0] = 1;
    for _ in 1..=m {
        let prev = osp.clone();
        osp[0] = 0;
        for t in 1..=m {
            osp[t] = (t as u64) * (prev[t] + prev[t - 1]);
        }
    }
    // dimension m - t for t parts
    (0..m).map(|d| osp[m - d]).collect()
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Per-dimension face counts of the closed cell of `tau`: the product of a
/// `d`-cube (d = number of internal edges) with one permutahedron per leaf
/// label. Cube faces count `C(d, j) * 2^(d - j)` in dimension `j`.
pub fn expected_face_counts(tau: &Tree, a: usize) -> Result<Vec<u64>> {
    let n = tau.ground_size();
    let report = tau.validate_a_stable(n, a)?;
    if !report.pass() {
        return Err(Error::Unstable(format!("tree is not {a}-stable")));
    }
    let d = tau.internal_edge_count();
    let mut counts = vec![0u64; d + 1];
    for (j, slot) in counts.iter_mut().enumerate() {
        let binom = {
            let mut v = 1u64;
            for k in 0..j {
                v = v * ((d - k) as u64) / (k as u64 + 1);
            }
            v
        };
        *slot = binom << (d - j);
    }
    for part in tau.composition().parts() {
        counts = convolve(&counts, &permutahedron_face_counts(part.len()));
    }
    Ok(counts)
}

/// Report comparing closure face counts against the polytope model.
#[derive(Clone, Debug)]
pub struct FaceCountReport {
    pub closure: Vec<usize>,
    pub expected: Vec<u64>,
    pub matches: bool,
}

/// Compares the per-dimension counts of the closure poset of `tau` with the
/// cube-times-permutahedra face counts.
pub fn verify_closure_faces(tau: &Tree, n: usize, a: usize) -> Result<FaceCountReport> {
    let report = tau.validate_a_stable(n, a)?;
    if !report.pass() {
        return Err(Error::Unstable(format!("tree is not {a}-stable")));
    }
    let closure = tau.closure_poset().counts();
    let expected = expected_face_counts(tau, a)?;
    let matches = closure.len() == expected.len()
        && closure
            .iter()
            .zip(&expected)
            .all(|(&c, &e)| c as u64 == e);
    Ok(FaceCountReport {
        closure,
        expected,
        matches,
    })
}

/// Relabels every leaf element `i` of `tau` by `g(i)` and canonicalizes.
pub fn sn_act(g: &Perm, tau: &Tree) -> Tree {
    tau.relabel(g).canonicalize()
}

/// The identity-permutation 0-cell: the height-1 tree with singleton leaves
/// in ascending order.
pub fn identity_zero_cell(n: usize, cover: CoverKind) -> Tree {
    let children = (1..=n)
        .map(|i| Node::Leaf(LeafLabel::singleton(i)))
        .collect();
    Tree::new(Node::internal(children), cover.variant()).canonicalize()
}

/// Left-to-right leaf sequence of a 0-cell (height-1, singleton leaves).
pub fn zero_cell_leaf_seq(tree: &Tree) -> Result<Vec<usize>> {
    let comp = tree.composition();
    if comp.num_parts() != tree.ground_size() || tree.internal_edge_count() != 0 {
        return Err(Error::Domain(format!("{tree} is not a 0-cell")));
    }
    Ok(comp.parts().iter().map(LeafLabel::min_element).collect())
}

/// Outcome of the orbit checks on 0-cells.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub zero_cell_count: usize,
    pub orbit_size: usize,
    pub transitive: bool,
    /// Double cover: every stabilizer trivial. Base: every stabilizer is
    /// exactly `{id, w_{1,n}}`.
    pub stabilizers_ok: bool,
}

impl OrbitReport {
    pub fn pass(&self) -> bool {
        self.transitive && self.stabilizers_ok
    }
}

/// Verifies that the symmetric group acts simply transitively on the 0-cells
/// of the double cover, and transitively with stabilizer `{id, w_{1,n}}` at
/// every 0-cell of the base.
pub fn zero_cell_orbit_check(cx: &CellComplex) -> Result<OrbitReport> {
    let n = cx.n;
    let basepoint = identity_zero_cell(n, cx.cover);
    let all_zero: BTreeSet<String> = cx
        .zero_cells()
        .iter()
        .map(|&id| cx.cells[id].tree.serialize())
        .collect();
    let mut orbit: BTreeSet<String> = BTreeSet::new();
    let mut base_stab: Vec<Perm> = Vec::new();
    for g in Perm::all(n) {
        let image = sn_act(&g, &basepoint);
        if image == basepoint {
            base_stab.push(g.clone());
        }
        orbit.insert(image.serialize());
    }
    let transitive = orbit == all_zero;
    let w = Perm::interval_reversal(1, n, n)?;
    let stabilizers_ok = match cx.cover {
        CoverKind::Double => {
            // simple transitivity: the orbit map is injective
            base_stab.len() == 1 && orbit.len() == factorial(n)
        }
        CoverKind::Base => {
            // the identity point is stabilized exactly by {id, w_{1,n}};
            // the cell with leaf sequence L by its conjugate L w L^{-1}
            base_stab == vec![Perm::identity(n), w.clone()]
                && orbit.len() * 2 == factorial(n)
                && cx.zero_cells().iter().all(|&id| {
                    let tree = &cx.cells[id].tree;
                    let seq = zero_cell_leaf_seq(tree)
                        .and_then(Perm::from_images)
                        .expect("0-cell");
                    let conj = seq.compose(&w).compose(&seq.inverse());
                    sn_act(&conj, tree) == *tree
                })
        }
    };
    Ok(OrbitReport {
        zero_cell_count: all_zero.len(),
        orbit_size: orbit.len(),
        transitive,
        stabilizers_ok,
    })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Kinds of 1-cells whose closure contains the identity base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneCellKind {
    /// Height-1 tree with one part `{i, i+1}`.
    AdjacentPair { i: usize },
    /// All parts singleton, one internal edge over marks `p..=q`.
    LongInterval { p: usize, q: usize },
}

/// Kinds of 2-cells whose closure contains the identity base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoCellKind {
    /// Hexagon: one part `{i, i+1, i+2}`, no internal edges.
    Hexagon { i: usize },
    /// Square: two parts `{i, i+1}` and `{j, j+1}`, no internal edges.
    PairPair { i: usize, j: usize },
    /// Square: one part `{i, i+1}` and one internal edge over `p..=q`.
    IntervalPair {
        p: usize,
        q: usize,
        i: usize,
        nested: bool,
    },
    /// Square: all parts singleton, two internal edges over nested or
    /// disjoint intervals.
    TwoIntervals {
        first: (usize, usize),
        second: (usize, usize),
        nested: bool,
    },
}

#[derive(Clone, Debug)]
pub struct OneCellAtBase {
    pub cell: usize,
    pub kind: OneCellKind,
    /// The interval reversal `w_{p,q}` relating the two endpoints.
    pub label: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct TwoCellAtBase {
    pub cell: usize,
    pub kind: TwoCellKind,
    /// Alternating boundary cycle `(0-cell, 1-cell)` starting at the base
    /// point: entry `k` pairs a vertex with the edge leaving it.
    pub cycle: Vec<(usize, usize)>,
    /// Edge labels `(p, q)` of the boundary word, in traversal order.
    pub word: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct TwoSkeleton {
    pub basepoint: usize,
    pub one_cells: Vec<OneCellAtBase>,
    pub two_cells: Vec<TwoCellAtBase>,
}

/// The interval reversal relating the two endpoint 0-cells of an edge:
/// with `σ` the inverse of a 0-cell's leaf sequence, the label `g`
/// satisfies `ρ = g σ`.
fn edge_label(seq1: &[usize], seq2: &[usize]) -> Result<(usize, usize)> {
    let n = seq1.len();
    let l1 = Perm::from_images(seq1.to_vec())?;
    let l2 = Perm::from_images(seq2.to_vec())?;
    let g = l2.inverse().compose(&l1);
    g.as_interval_reversal().ok_or_else(|| {
        Error::Domain(format!(
            "edge label {g:?} is not an interval reversal (n={n})"
        ))
    })
}

/// Extracts and classifies the 1- and 2-cells of the double cover whose
/// closures contain the given base point, with oriented boundary cycles.
pub fn two_skeleton(cx: &CellComplex, basepoint: &Tree) -> Result<TwoSkeleton> {
    if cx.cover != CoverKind::Double {
        return Err(Error::Domain(
            "the labeled 2-skeleton lives on the double cover".into(),
        ));
    }
    let faces = cx
        .faces_down
        .as_ref()
        .ok_or_else(|| Error::Domain("complex built without face relation".into()))?;
    let bp = cx
        .cell_id(basepoint)
        .ok_or_else(|| Error::Domain("basepoint not in complex".into()))?;
    if cx.cells[bp].dim != 0 || *basepoint != identity_zero_cell(cx.n, cx.cover) {
        return Err(Error::Domain(
            "basepoint must be the identity-permutation 0-cell".into(),
        ));
    }
    let seq_of = |id: usize| zero_cell_leaf_seq(&cx.cells[id].tree);

    let mut one_cells = Vec::new();
    for &id in cx.by_dim.get(1).into_iter().flatten() {
        let endpoints = &faces[id];
        if endpoints.len() != 2 {
            return Err(Error::Domain(format!(
                "1-cell {} has {} endpoints",
                cx.cells[id].tree,
                endpoints.len()
            )));
        }
        if !endpoints.contains(&bp) {
            continue;
        }
        let label = edge_label(&seq_of(endpoints[0])?, &seq_of(endpoints[1])?)?;
        one_cells.push(OneCellAtBase {
            cell: id,
            kind: classify_one_cell(&cx.cells[id])?,
            label,
        });
    }

    let mut two_cells = Vec::new();
    for &id in cx.by_dim.get(2).into_iter().flatten() {
        let edges = &faces[id];
        let vertices: BTreeSet<usize> = edges.iter().flat_map(|&e| faces[e].clone()).collect();
        if !vertices.contains(&bp) {
            continue;
        }
        let cycle = boundary_cycle(cx, faces, id, bp)?;
        let mut word = Vec::new();
        for k in 0..cycle.len() {
            let v = cycle[k].0;
            let w = cycle[(k + 1) % cycle.len()].0;
            word.push(edge_label(&seq_of(v)?, &seq_of(w)?)?);
        }
        two_cells.push(TwoCellAtBase {
            cell: id,
            kind: classify_two_cell(&cx.cells[id])?,
            cycle,
            word,
        });
    }
    Ok(TwoSkeleton {
        basepoint: bp,
        one_cells,
        two_cells,
    })
}

/// Walks the boundary polygon of a 2-cell: vertices and edges alternate;
/// every boundary vertex must meet exactly two boundary edges.
fn boundary_cycle(
    cx: &CellComplex,
    faces: &[Vec<usize>],
    two_cell: usize,
    start: usize,
) -> Result<Vec<(usize, usize)>> {
    let edges = &faces[two_cell];
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in edges {
        for &v in &faces[e] {
            incident.entry(v).or_default().push(e);
        }
    }
    for (v, es) in &mut incident {
        if es.len() != 2 {
            return Err(Error::Domain(format!(
                "boundary of {} is not a polygon: vertex {} lies on {} edges",
                cx.cells[two_cell].tree,
                cx.cells[*v].tree,
                es.len()
            )));
        }
        es.sort_by(|&x, &y| cx.cells[x].tree.serialize().cmp(&cx.cells[y].tree.serialize()));
    }
    let mut cycle = Vec::with_capacity(edges.len());
    let mut vertex = start;
    let mut edge = incident[&start][0];
    loop {
        cycle.push((vertex, edge));
        let next_vertex = *faces[edge]
            .iter()
            .find(|&&v| v != vertex)
            .ok_or_else(|| Error::Domain("degenerate boundary edge".into()))?;
        let next_edge = *incident[&next_vertex]
            .iter()
            .find(|&&e| e != edge)
            .expect("vertex has two incident edges");
        vertex = next_vertex;
        edge = next_edge;
        if vertex == start {
            break;
        }
        if cycle.len() > 2 * edges.len() {
            return Err(Error::Domain("boundary walk does not close".into()));
        }
    }
    if cycle.len() != edges.len() {
        return Err(Error::Domain(format!(
            "boundary of {} is not a single cycle",
            cx.cells[two_cell].tree
        )));
    }
    Ok(cycle)
}

/// Finds the flip-orbit representative whose composition consists of
/// ascending intervals of consecutive integers.
fn interval_representative(tree: &Tree) -> Result<Tree> {
    'outer: for rep in tree.flip_orbit() {
        let mut next = 1usize;
        for part in rep.composition().parts() {
            for &e in part.elements() {
                if e != next {
                    continue 'outer;
                }
                next += 1;
            }
        }
        return Ok(rep);
    }
    Err(Error::Domain(format!(
        "{tree} has no identity-compatible representative"
    )))
}

fn internal_edge_intervals(tree: &Tree) -> Vec<(usize, usize)> {
    fn walk(node: &Node, is_root: bool, out: &mut Vec<(usize, usize)>) {
        if let Node::Internal { children, .. } = node {
            if !is_root {
                let union = node.label_union();
                let p = *union.iter().next().unwrap();
                let q = *union.iter().next_back().unwrap();
                out.push((p, q));
            }
            for c in children {
                walk(c, false, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(tree.root(), true, &mut out);
    out.sort_unstable();
    out
}

fn classify_one_cell(cell: &Cell) -> Result<OneCellKind> {
    let rep = interval_representative(&cell.tree)?;
    if cell.internal_edges == 0 {
        let comp = rep.composition();
        let pair = comp
            .parts()
            .iter()
            .find(|p| p.len() == 2)
            .ok_or_else(|| Error::Domain("1-cell without a 2-element part".into()))?;
        Ok(OneCellKind::AdjacentPair { i: pair.min_element() })
    } else {
        let intervals = internal_edge_intervals(&rep);
        let (p, q) = intervals[0];
        Ok(OneCellKind::LongInterval { p, q })
    }
}

fn classify_two_cell(cell: &Cell) -> Result<TwoCellKind> {
    let rep = interval_representative(&cell.tree)?;
    let comp = rep.composition();
    let big_parts: Vec<&LeafLabel> = comp.parts().iter().filter(|p| p.len() > 1).collect();
    match cell.internal_edges {
        0 => match big_parts.as_slice() {
            [part] if part.len() == 3 => Ok(TwoCellKind::Hexagon { i: part.min_element() }),
            [x, y] if x.len() == 2 && y.len() == 2 => Ok(TwoCellKind::PairPair {
                i: x.min_element().min(y.min_element()),
                j: x.min_element().max(y.min_element()),
            }),
            _ => Err(Error::Domain(format!(
                "unclassifiable 2-cell {}",
                cell.tree
            ))),
        },
        1 => {
            let [part] = big_parts.as_slice() else {
                return Err(Error::Domain(format!(
                    "unclassifiable 2-cell {}",
                    cell.tree
                )));
            };
            let (p, q) = internal_edge_intervals(&rep)[0];
            let i = part.min_element();
            let nested = p <= i && i < q;
            Ok(TwoCellKind::IntervalPair { p, q, i, nested })
        }
        2 => {
            let intervals = internal_edge_intervals(&rep);
            let (first, second) = (intervals[0], intervals[1]);
            let nested = first.0 <= second.0 && second.1 <= first.1;
            Ok(TwoCellKind::TwoIntervals {
                first,
                second,
                nested,
            })
        }
        _ => Err(Error::Domain(format!("{} is not 2-dimensional", cell.tree))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_vectors_and_euler() {
        let cx = build_complex(4, 3, CoverKind::Base, None, false).unwrap();
        assert_eq!(cx.f_vector(), vec![12, 18, 7]);
        assert_eq!(euler_characteristic(&cx).unwrap(), 1);

        let cx = build_complex(4, 1, CoverKind::Base, None, false).unwrap();
        assert_eq!(cx.f_vector(), vec![12, 30, 15]);
        assert_eq!(euler_characteristic(&cx).unwrap(), -3);
    }

    #[test]
    fn standard_euler_agrees() {
        for (n, a) in [(4, 1), (4, 2), (4, 3), (5, 2)] {
            let cx = build_complex(n, a, CoverKind::Base, None, false).unwrap();
            assert_eq!(
                euler_characteristic(&cx).unwrap(),
                euler_characteristic_standard(n, a, CoverKind::Base).unwrap(),
                "chi mismatch at n={n} a={a}"
            );
        }
    }

    #[test]
    fn expected_face_counts_examples() {
        let hex = Tree::parse_as("({1,2,3} {4})", Variant::Stable).unwrap();
        assert_eq!(expected_face_counts(&hex, 3).unwrap(), vec![6, 6, 1]);

        let interval = Tree::parse_as("(({1} {2}) {3} {4})", Variant::Stable)
            .unwrap()
            .canonicalize();
        assert_eq!(expected_face_counts(&interval, 1).unwrap(), vec![2, 1]);

        // hexagonal prism: one internal edge over a 3-element part (n=5, a=3)
        let prism = Tree::parse_as("(({1,2,3} {4}) {5})", Variant::Stable)
            .unwrap()
            .canonicalize();
        assert_eq!(expected_face_counts(&prism, 3).unwrap(), vec![12, 18, 8, 1]);
    }

    #[test]
    fn closure_matches_polytope_small() {
        for (n, a) in [(4, 1), (4, 2), (4, 3)] {
            for t in enumerate_a_stable(n, a, Variant::Stable, None).unwrap() {
                let report = verify_closure_faces(&t, n, a).unwrap();
                assert!(report.matches, "mismatch for {t}: {report:?}");
            }
        }
    }

    #[test]
    fn sn_action_identity_and_f_vector_invariance() {
        let cx = build_complex(4, 3, CoverKind::Base, None, false).unwrap();
        let id = Perm::identity(4);
        let g = Perm::from_images(vec![2, 3, 1, 4]).unwrap();
        for cell in &cx.cells {
            assert_eq!(sn_act(&id, &cell.tree), cell.tree);
            let image = sn_act(&g, &cell.tree);
            assert_eq!(image.dim(), cell.dim);
            assert!(cx.cell_id(&image).is_some());
        }
    }

    #[test]
    fn orbit_checks() {
        let cx = build_complex(4, 3, CoverKind::Base, Some(0), false).unwrap();
        let report = zero_cell_orbit_check(&cx).unwrap();
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.zero_cell_count, 12);

        let cx = build_complex(4, 3, CoverKind::Double, Some(0), false).unwrap();
        let report = zero_cell_orbit_check(&cx).unwrap();
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.zero_cell_count, 24);
    }

    #[test]
    fn skeleton_n4_a3() {
        let cx = build_complex(4, 3, CoverKind::Double, Some(2), true).unwrap();
        let bp = identity_zero_cell(4, CoverKind::Double);
        let sk = two_skeleton(&cx, &bp).unwrap();
        // three adjacent-pair 1-cells, no long-interval 1-cells
        assert_eq!(sk.one_cells.len(), 3);
        assert!(sk
            .one_cells
            .iter()
            .all(|c| matches!(c.kind, OneCellKind::AdjacentPair { .. })));
        // two hexagons and one pair-pair square
        let hexes = sk
            .two_cells
            .iter()
            .filter(|c| matches!(c.kind, TwoCellKind::Hexagon { .. }))
            .count();
        let squares = sk
            .two_cells
            .iter()
            .filter(|c| matches!(c.kind, TwoCellKind::PairPair { .. }))
            .count();
        assert_eq!((hexes, squares, sk.two_cells.len()), (2, 1, 3));
        // hexagon boundary words alternate the two adjacent labels
        for c in &sk.two_cells {
            if let TwoCellKind::Hexagon { i } = c.kind {
                assert_eq!(c.word.len(), 6);
                let expect_a = (i, i + 1);
                let expect_b = (i + 1, i + 2);
                for (k, w) in c.word.iter().enumerate() {
                    let expect = if k % 2 == 0 { c.word[0] } else { c.word[1] };
                    assert_eq!(*w, expect);
                    assert!(*w == expect_a || *w == expect_b);
                }
            }
        }
    }

    #[test]
    fn skeleton_n5_a3_long_intervals() {
        let cx = build_complex(5, 3, CoverKind::Double, Some(2), true).unwrap();
        let bp = identity_zero_cell(5, CoverKind::Double);
        let sk = two_skeleton(&cx, &bp).unwrap();
        let long: Vec<(usize, usize)> = sk
            .one_cells
            .iter()
            .filter_map(|c| match c.kind {
                OneCellKind::LongInterval { p, q } => Some((p, q)),
                _ => None,
            })
            .collect();
        assert_eq!(long, vec![(1, 4), (2, 5)]);
    }
}
