//! Rooted ordered trees with subset-labeled leaves, flip equivalence,
//! a-stability, compression maps, and the face partial order on a-stable
//! trees.
//!
//! A tree's leaves are labeled by pairwise disjoint subsets of `[n]` whose
//! left-to-right sequence forms a composition of `[n]`. Flipping at a vertex
//! reverses the child order at every vertex of its subtree. Which vertices
//! may be flipped is governed by the tree's [`Variant`].

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// A nonempty ascending set of integers in `[n]`, labeling one leaf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafLabel(BTreeSet<usize>);

impl LeafLabel {
    pub fn new(elements: BTreeSet<usize>) -> Result<LeafLabel> {
        if elements.is_empty() {
            return Err(Error::Malformed("empty leaf label".into()));
        }
        if elements.iter().any(|&e| e == 0) {
            return Err(Error::Malformed("leaf labels are 1-indexed".into()));
        }
        Ok(LeafLabel(elements))
    }

    pub fn singleton(i: usize) -> LeafLabel {
        LeafLabel(BTreeSet::from([i]))
    }

    pub fn elements(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_element(&self) -> usize {
        *self.0.iter().next().unwrap()
    }
}

impl fmt::Display for LeafLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", strs.join(","))
    }
}

/// An ordered sequence of pairwise disjoint leaf labels with union `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(pub Vec<LeafLabel>);

impl Composition {
    pub fn parts(&self) -> &[LeafLabel] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn ground_size(&self) -> usize {
        self.0.iter().map(|p| p.len()).sum()
    }

    /// True when `self` refines `other`, i.e. `other` is obtained by merging
    /// consecutive parts of `self`.
    pub fn refines(&self, other: &Composition) -> bool {
        let mut fine = self.0.iter();
        for coarse in &other.0 {
            let mut acc: BTreeSet<usize> = BTreeSet::new();
            while acc.len() < coarse.len() {
                match fine.next() {
                    Some(part) => acc.extend(part.elements().iter().copied()),
                    None => return false,
                }
            }
            if &acc != coarse.elements() {
                return false;
            }
        }
        fine.next().is_none()
    }

    pub fn parse(s: &str) -> Result<Composition> {
        let mut parts = Vec::new();
        for chunk in s.split('|') {
            parts.push(parse_label(chunk.trim())?);
        }
        Ok(Composition(parts))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("|"))
    }
}

fn parse_label(s: &str) -> Result<LeafLabel> {
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{...}} label, got {s:?}")))?;
    let mut set = BTreeSet::new();
    for tok in inner.split(',') {
        let tok = tok.trim();
        let v: usize = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad label element {tok:?}")))?;
        if !set.insert(v) {
            return Err(Error::Malformed(format!("repeated element {v} in label")));
        }
    }
    LeafLabel::new(set)
}

/// Flip-equivalence flavor of a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// No flips; the ordered tree itself.
    Plain,
    /// Flippable set is explicit and must contain the root.
    Refined,
    /// Every internal vertex is flippable.
    Stable,
    /// Every internal vertex except the root is flippable.
    DoubleCoverStable,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Leaf(LeafLabel),
    Internal { children: Vec<Node>, flippable: bool },
}

impl Node {
    pub fn leaf(label: LeafLabel) -> Node {
        Node::Leaf(label)
    }

    pub fn internal(children: Vec<Node>) -> Node {
        Node::Internal {
            children,
            flippable: false,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf(_))
    }

    /// Total number of labeled points in the subtree.
    pub fn mass(&self) -> usize {
        match self {
            Node::Leaf(l) => l.len(),
            Node::Internal { children, .. } => children.iter().map(Node::mass).sum(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Internal { children, .. } => children.iter().map(Node::leaf_count).sum(),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Internal { children, .. } => {
                1 + children.iter().map(Node::internal_count).sum::<usize>()
            }
        }
    }

    /// Union of all leaf labels in the subtree.
    pub fn label_union(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<usize>) {
        match self {
            Node::Leaf(l) => out.extend(l.elements().iter().copied()),
            Node::Internal { children, .. } => {
                for c in children {
                    c.collect_labels(out);
                }
            }
        }
    }

    fn leaves_in_order(&self, out: &mut Vec<LeafLabel>) {
        match self {
            Node::Leaf(l) => out.push(l.clone()),
            Node::Internal { children, .. } => {
                for c in children {
                    c.leaves_in_order(out);
                }
            }
        }
    }

    /// Reverses child order at this node and recursively below.
    fn flip(&mut self) {
        if let Node::Internal { children, .. } = self {
            children.reverse();
            for c in children {
                c.flip();
            }
        }
    }

    fn serialize_into(&self, stars: bool, out: &mut String) {
        match self {
            Node::Leaf(l) => out.push_str(&l.to_string()),
            Node::Internal {
                children,
                flippable,
            } => {
                if stars && *flippable {
                    out.push('*');
                }
                out.push('(');
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    c.serialize_into(stars, out);
                }
                out.push(')');
            }
        }
    }
}

/// A rooted ordered tree together with its flip-equivalence flavor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    root: Node,
    variant: Variant,
}

impl Tree {
    /// Wraps a node, normalizing the flippable flags to match the variant.
    /// For `Refined`, the provided flags are kept and the root is marked
    /// flippable.
    pub fn new(mut root: Node, variant: Variant) -> Tree {
        fn set_all(node: &mut Node, value: bool) {
            if let Node::Internal {
                children,
                flippable,
            } = node
            {
                *flippable = value;
                for c in children {
                    set_all(c, value);
                }
            }
        }
        match variant {
            Variant::Plain => set_all(&mut root, false),
            Variant::Stable => set_all(&mut root, true),
            Variant::DoubleCoverStable => {
                set_all(&mut root, true);
                if let Node::Internal { flippable, .. } = &mut root {
                    *flippable = false;
                }
            }
            Variant::Refined => {
                if let Node::Internal { flippable, .. } = &mut root {
                    *flippable = true;
                }
            }
        }
        Tree { root, variant }
    }

    /// Wraps a node keeping the flippable flags exactly as given. Used for
    /// refined trees of oriented curves, whose root stays non-flippable.
    pub(crate) fn from_parts(root: Node, variant: Variant) -> Tree {
        Tree { root, variant }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Reinterprets the same underlying ordered tree in another variant.
    pub fn with_variant(&self, variant: Variant) -> Tree {
        Tree::new(self.root.clone(), variant)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        self.root
            .serialize_into(self.variant == Variant::Refined, &mut out);
        out
    }

    /// Parses the space-separated serialization. Stars mark flippable
    /// vertices; their presence selects the `Refined` variant, otherwise the
    /// result is `Plain`.
    pub fn parse(s: &str) -> Result<Tree> {
        let mut chars = s.chars().peekable();
        let root = parse_node(&mut chars)?;
        skip_ws(&mut chars);
        if chars.peek().is_some() {
            return Err(Error::Parse(format!("trailing input in tree {s:?}")));
        }
        let has_stars = node_has_star(&root);
        if has_stars {
            if let Node::Internal { flippable: false, .. } = root {
                return Err(Error::Malformed(
                    "refined tree must have a flippable root".into(),
                ));
            }
            Ok(Tree {
                root,
                variant: Variant::Refined,
            })
        } else {
            Ok(Tree {
                root,
                variant: Variant::Plain,
            })
        }
    }

    pub fn parse_as(s: &str, variant: Variant) -> Result<Tree> {
        let t = Tree::parse(s)?;
        Ok(Tree::new(t.root, variant))
    }

    /// Checks well-formedness over the ground set `[n]`: disjoint labels with
    /// union `[n]` and every internal vertex of arity at least 2.
    pub fn validate_ground(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::Domain(format!("ground set [{n}] too small; need n >= 2")));
        }
        fn walk(node: &Node, seen: &mut BTreeSet<usize>) -> Result<()> {
            match node {
                Node::Leaf(l) => {
                    for &e in l.elements() {
                        if !seen.insert(e) {
                            return Err(Error::Malformed(format!(
                                "label element {e} occurs in two leaves"
                            )));
                        }
                    }
                    Ok(())
                }
                Node::Internal { children, .. } => {
                    if children.len() < 2 {
                        return Err(Error::Malformed(
                            "internal vertex with fewer than 2 children".into(),
                        ));
                    }
                    for c in children {
                        walk(c, seen)?;
                    }
                    Ok(())
                }
            }
        }
        let mut seen = BTreeSet::new();
        walk(&self.root, &mut seen)?;
        let expect: BTreeSet<usize> = (1..=n).collect();
        if seen != expect {
            return Err(Error::Malformed(format!(
                "leaf labels do not partition [{n}]"
            )));
        }
        Ok(())
    }

    pub fn composition(&self) -> Composition {
        let mut out = Vec::new();
        self.root.leaves_in_order(&mut out);
        Composition(out)
    }

    pub fn ground_size(&self) -> usize {
        self.root.mass()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    pub fn internal_edge_count(&self) -> usize {
        self.root.internal_count().saturating_sub(1)
    }

    /// Dimension of the dual cell indexed by this tree:
    /// `|E_int| + n - #leaves`.
    pub fn dim(&self) -> usize {
        self.internal_edge_count() + self.ground_size() - self.leaf_count()
    }

    /// Codimension computed from vertex arities: the sum of `c(v) - 2` over
    /// internal vertices. Equals the dimension of the standard cell.
    pub fn standard_dim(&self) -> usize {
        fn walk(node: &Node) -> usize {
            match node {
                Node::Leaf(_) => 0,
                Node::Internal { children, .. } => {
                    children.len() - 2 + children.iter().map(walk).sum::<usize>()
                }
            }
        }
        walk(&self.root)
    }

    /// Preorder indices (root = 0, counting every node) of the flippable
    /// internal vertices.
    pub fn flippable_positions(&self) -> Vec<usize> {
        fn walk(node: &Node, idx: &mut usize, out: &mut Vec<usize>) {
            let here = *idx;
            *idx += 1;
            if let Node::Internal {
                children,
                flippable,
            } = node
            {
                if *flippable {
                    out.push(here);
                }
                for c in children {
                    walk(c, idx, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut 0, &mut out);
        out
    }

    /// Flips the subtree rooted at the vertex with the given preorder index.
    /// The vertex must be internal; it need not be flippable.
    pub fn flip_at(&self, v: usize) -> Result<Tree> {
        fn walk(node: &mut Node, idx: &mut usize, target: usize) -> bool {
            let here = *idx;
            *idx += 1;
            if here == target {
                if node.is_leaf() {
                    return false;
                }
                node.flip();
                return true;
            }
            if let Node::Internal { children, .. } = node {
                for c in children {
                    if walk(c, idx, target) {
                        return true;
                    }
                }
            }
            false
        }
        let mut t = self.clone();
        let mut idx = 0;
        if walk(&mut t.root, &mut idx, v) {
            Ok(t)
        } else {
            Err(Error::Domain(format!(
                "no internal vertex at preorder index {v}"
            )))
        }
    }

    /// The flip orbit of this tree under flips at its flippable vertices.
    pub fn flip_orbit(&self) -> Vec<Tree> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut queue = vec![self.clone()];
        let mut out = Vec::new();
        seen.insert(self.serialize());
        while let Some(t) = queue.pop() {
            for v in t.flippable_positions() {
                let f = t.flip_at(v).expect("flippable vertex is internal");
                if seen.insert(f.serialize()) {
                    queue.push(f.clone());
                }
            }
            out.push(t);
        }
        out
    }

    /// The representative with byte-lexicographically least serialization in
    /// the flip orbit. Two trees are flip-equivalent iff their canonical
    /// forms are equal.
    ///
    /// A flip at a flippable vertex absorbs any reversal inherited from
    /// above, so the reversal state of each flippable vertex can be chosen
    /// freely and independently. Since serialization tokens are prefix-free,
    /// minimizing each subtree independently minimizes the whole, giving a
    /// linear-time computation instead of an orbit walk.
    pub fn canonicalize(&self) -> Tree {
        let stars = self.variant == Variant::Refined;
        // per node, the minimal (serialization, subtree) for inherited
        // parity false and true; computed bottom-up, each node once
        fn both_forms(node: &Node, stars: bool) -> [(String, Node); 2] {
            match node {
                Node::Leaf(l) => {
                    let form = (l.to_string(), node.clone());
                    [form.clone(), form]
                }
                Node::Internal {
                    children,
                    flippable,
                } => {
                    let child_forms: Vec<[(String, Node); 2]> =
                        children.iter().map(|c| both_forms(c, stars)).collect();
                    let assemble = |rev: bool| -> (String, Node) {
                        let mut ser = String::new();
                        if stars && *flippable {
                            ser.push('*');
                        }
                        ser.push('(');
                        let mut new_children = Vec::with_capacity(children.len());
                        let indices: Vec<usize> = if rev {
                            (0..children.len()).rev().collect()
                        } else {
                            (0..children.len()).collect()
                        };
                        for (i, k) in indices.into_iter().enumerate() {
                            if i > 0 {
                                ser.push(' ');
                            }
                            let (cs, cn) = &child_forms[k][usize::from(rev)];
                            ser.push_str(cs);
                            new_children.push(cn.clone());
                        }
                        ser.push(')');
                        (
                            ser,
                            Node::Internal {
                                children: new_children,
                                flippable: *flippable,
                            },
                        )
                    };
                    if *flippable {
                        // a flip here absorbs the inherited parity
                        let fwd = assemble(false);
                        let rev = assemble(true);
                        let min = if rev.0 < fwd.0 { rev } else { fwd };
                        [min.clone(), min]
                    } else {
                        [assemble(false), assemble(true)]
                    }
                }
            }
        }
        let [(_, root), _] = both_forms(&self.root, stars);
        Tree {
            root,
            variant: self.variant,
        }
    }

    pub fn canonical_key(&self) -> String {
        self.canonicalize().serialize()
    }

    /// Relabels every leaf element `i` by `g(i)`. Does not canonicalize.
    pub fn relabel(&self, g: &Perm) -> Tree {
        fn walk(node: &Node, g: &Perm) -> Node {
            match node {
                Node::Leaf(l) => Node::Leaf(
                    LeafLabel::new(l.elements().iter().map(|&e| g.apply(e)).collect()).unwrap(),
                ),
                Node::Internal {
                    children,
                    flippable,
                } => Node::Internal {
                    children: children.iter().map(|c| walk(c, g)).collect(),
                    flippable: *flippable,
                },
            }
        }
        Tree {
            root: walk(&self.root, g),
            variant: self.variant,
        }
    }

    /// The compression map to `b`-stable trees: every maximal subtree of mass
    /// at most `b` collapses to a leaf labeled by the union of its labels.
    fn compress_to(&self, b: usize) -> Tree {
        fn walk(node: &Node, b: usize) -> Node {
            match node {
                Node::Leaf(_) => node.clone(),
                Node::Internal {
                    children,
                    flippable,
                } => {
                    if node.mass() <= b {
                        Node::Leaf(LeafLabel::new(node.label_union()).unwrap())
                    } else {
                        Node::Internal {
                            children: children.iter().map(|c| walk(c, b)).collect(),
                            flippable: *flippable,
                        }
                    }
                }
            }
        }
        Tree {
            root: walk(&self.root, b),
            variant: self.variant,
        }
    }

    /// `ϖ_a`: compresses an unrestricted tree into an a-stable one.
    pub fn compress(&self, a: usize) -> Result<Tree> {
        let n = self.ground_size();
        if a == 0 || a >= n {
            return Err(Error::Domain(format!("need 1 <= a <= n-1, got a={a}, n={n}")));
        }
        Ok(self.compress_to(a))
    }

    /// `ϖ_{a,b}`: compresses an a-stable tree into a b-stable one, `a <= b`.
    pub fn compress_between(&self, a: usize, b: usize) -> Result<Tree> {
        if a > b {
            return Err(Error::Domain(format!(
                "compression requires a <= b, got a={a}, b={b}"
            )));
        }
        let n = self.ground_size();
        if b == 0 || b >= n {
            return Err(Error::Domain(format!("need 1 <= b <= n-1, got b={b}, n={n}")));
        }
        Ok(self.compress_to(b))
    }

    /// Checks the two a-stability conditions, reporting violations
    /// individually. Structural problems surface as `Err`; stability
    /// failures are reported inside the `Ok` report.
    pub fn validate_a_stable(&self, n: usize, a: usize) -> Result<StabilityReport> {
        self.validate_ground(n)?;
        if a == 0 || a >= n {
            return Err(Error::Domain(format!("need 1 <= a <= n-1, got a={a}, n={n}")));
        }
        let mut report = StabilityReport {
            oversized_parts: Vec::new(),
            light_subtrees: Vec::new(),
        };
        fn walk(node: &Node, idx: &mut usize, a: usize, report: &mut StabilityReport) {
            let here = *idx;
            *idx += 1;
            match node {
                Node::Leaf(l) => {
                    if l.len() > a {
                        report.oversized_parts.push(l.clone());
                    }
                }
                Node::Internal { children, .. } => {
                    let mass = node.mass();
                    if mass < a + 1 {
                        report.light_subtrees.push((here, mass));
                    }
                    for c in children {
                        walk(c, idx, a, report);
                    }
                }
            }
        }
        walk(&self.root, &mut 0, a, &mut report);
        Ok(report)
    }

    /// All trees covered by `self` in the face order: one internal edge
    /// contracted (with or without pre-flipping the child) or one leaf split
    /// into two consecutive nonempty parts. Results are canonical and
    /// deduplicated; each has dimension exactly one less.
    pub fn covers(&self) -> Vec<Tree> {
        let mut out: BTreeMap<String, Tree> = BTreeMap::new();
        for root in node_contractions(&self.root) {
            let t = Tree::new(root, self.variant).canonicalize();
            out.entry(t.serialize()).or_insert(t);
        }
        for root in node_leaf_splits(&self.root) {
            let t = Tree::new(root, self.variant).canonicalize();
            out.entry(t.serialize()).or_insert(t);
        }
        out.into_values().collect()
    }

    /// The closure of the cell indexed by `self`: all faces reachable by
    /// iterated covers, grouped by dimension, plus the covering relation.
    pub fn closure_poset(&self) -> ClosurePoset {
        let me = self.canonicalize();
        let mut by_key: BTreeMap<String, Tree> = BTreeMap::new();
        let mut relation: BTreeSet<(String, String)> = BTreeSet::new();
        let mut queue = vec![me.clone()];
        by_key.insert(me.serialize(), me);
        while let Some(t) = queue.pop() {
            let key = t.serialize();
            for f in t.covers() {
                let fkey = f.serialize();
                relation.insert((key.clone(), fkey.clone()));
                if !by_key.contains_key(&fkey) {
                    by_key.insert(fkey, f.clone());
                    queue.push(f);
                }
            }
        }
        let mut by_dim: BTreeMap<usize, Vec<Tree>> = BTreeMap::new();
        for t in by_key.into_values() {
            by_dim.entry(t.dim()).or_default().push(t);
        }
        ClosurePoset {
            by_dim,
            covering: relation.into_iter().collect(),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Per-condition outcome of the a-stability check.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    /// Leaves whose label exceeds the part-size bound.
    pub oversized_parts: Vec<LeafLabel>,
    /// Internal vertices (preorder index, mass) with subtree mass < a + 1.
    pub light_subtrees: Vec<(usize, usize)>,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.oversized_parts.is_empty() && self.light_subtrees.is_empty()
    }
}

/// Faces of a closed cell grouped by dimension, with the covering relation
/// between canonical serializations.
#[derive(Clone, Debug)]
pub struct ClosurePoset {
    pub by_dim: BTreeMap<usize, Vec<Tree>>,
    pub covering: Vec<(String, String)>,
}

impl ClosurePoset {
    /// Number of faces in each dimension, from 0 up to the top dimension.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.by_dim.keys().max().copied().unwrap_or(0);
        (0..=top)
            .map(|d| self.by_dim.get(&d).map_or(0, Vec::len))
            .collect()
    }
}

fn node_has_star(node: &Node) -> bool {
    match node {
        Node::Leaf(_) => false,
        Node::Internal {
            children,
            flippable,
        } => *flippable || children.iter().any(node_has_star),
    }
}

fn skip_ws(chars: &mut std::iter::Peekable<std::str::Chars>) {
    while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
        chars.next();
    }
}

fn parse_node(chars: &mut std::iter::Peekable<std::str::Chars>) -> Result<Node> {
    skip_ws(chars);
    match chars.peek() {
        Some('*') | Some('(') => {
            let flippable = if chars.peek() == Some(&'*') {
                chars.next();
                if chars.peek() != Some(&'(') {
                    return Err(Error::Parse("'*' must precede '('".into()));
                }
                true
            } else {
                false
            };
            chars.next(); // consume '('
            let mut children = Vec::new();
            loop {
                skip_ws(chars);
                match chars.peek() {
                    Some(')') => {
                        chars.next();
                        break;
                    }
                    Some(_) => children.push(parse_node(chars)?),
                    None => return Err(Error::Parse("unterminated '('".into())),
                }
            }
            if children.len() < 2 {
                return Err(Error::Malformed(
                    "internal vertex with fewer than 2 children".into(),
                ));
            }
            Ok(Node::Internal {
                children,
                flippable,
            })
        }
        Some('{') => {
            let mut label = String::new();
            for c in chars.by_ref() {
                label.push(c);
                if c == '}' {
                    break;
                }
            }
            if !label.ends_with('}') {
                return Err(Error::Parse("unterminated '{'".into()));
            }
            Ok(Node::Leaf(parse_label(&label)?))
        }
        other => Err(Error::Parse(format!("unexpected character {other:?}"))),
    }
}

/// All single-edge contractions of the tree rooted at `node`, in both the
/// plain and pre-flipped variants of the contracted child.
fn node_contractions(node: &Node) -> Vec<Node> {
    let Node::Internal {
        children,
        flippable,
    } = node
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (i, c) in children.iter().enumerate() {
        if c.is_leaf() {
            continue;
        }
        // contract the edge to child i, optionally flipping the child first
        for pre_flip in [false, true] {
            let mut child = c.clone();
            if pre_flip {
                child.flip();
            }
            let Node::Internal {
                children: grandchildren,
                ..
            } = child
            else {
                unreachable!()
            };
            let mut new_children: Vec<Node> = Vec::with_capacity(children.len() + 1);
            new_children.extend_from_slice(&children[..i]);
            new_children.extend(grandchildren);
            new_children.extend_from_slice(&children[i + 1..]);
            out.push(Node::Internal {
                children: new_children,
                flippable: *flippable,
            });
        }
        // contractions strictly inside child i
        for inner in node_contractions(c) {
            let mut new_children = children.clone();
            new_children[i] = inner;
            out.push(Node::Internal {
                children: new_children,
                flippable: *flippable,
            });
        }
    }
    out
}

/// All trees obtained by splitting exactly one leaf into two consecutive
/// nonempty parts (every ordered 2-coloring of its label).
fn node_leaf_splits(node: &Node) -> Vec<Node> {
    match node {
        Node::Leaf(l) => {
            let elems: Vec<usize> = l.elements().iter().copied().collect();
            let k = elems.len();
            let mut out = Vec::new();
            if k < 2 {
                return out;
            }
            for mask in 1..(1u64 << k) - 1 {
                let mut left = BTreeSet::new();
                let mut right = BTreeSet::new();
                for (bit, &e) in elems.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        left.insert(e);
                    } else {
                        right.insert(e);
                    }
                }
                out.push(Node::Internal {
                    children: vec![
                        Node::Leaf(LeafLabel::new(left).unwrap()),
                        Node::Leaf(LeafLabel::new(right).unwrap()),
                    ],
                    // placeholder: the pair replaces the leaf in the parent
                    flippable: false,
                });
            }
            out
        }
        Node::Internal {
            children,
            flippable,
        } => {
            let mut out = Vec::new();
            for (i, c) in children.iter().enumerate() {
                for split in node_leaf_splits(c) {
                    let mut new_children = children.clone();
                    if c.is_leaf() {
                        // splice the two new leaves in place of the old leaf
                        let Node::Internal {
                            children: pair, ..
                        } = split
                        else {
                            unreachable!()
                        };
                        new_children.splice(i..=i, pair);
                    } else {
                        new_children[i] = split;
                    }
                    out.push(Node::Internal {
                        children: new_children,
                        flippable: *flippable,
                    });
                }
            }
            out
        }
    }
}

/// Enumerates every canonical a-stable tree on `[n]` in the given variant,
/// optionally keeping only cells of dimension at most `max_dim`. The output
/// is duplicate-free and ordered by (dimension, serialization).
pub fn enumerate_a_stable(
    n: usize,
    a: usize,
    variant: Variant,
    max_dim: Option<usize>,
) -> Result<Vec<Tree>> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got n={n}")));
    }
    if n > 12 {
        return Err(Error::Domain(format!("enumeration capped at n <= 12, got n={n}")));
    }
    if a == 0 || a >= n {
        return Err(Error::Domain(format!("need 1 <= a <= n-1, got a={a}, n={n}")));
    }
    if !matches!(variant, Variant::Stable | Variant::DoubleCoverStable) {
        return Err(Error::Domain(
            "enumeration is defined for the stable variants".into(),
        ));
    }

    let mut seen: BTreeMap<String, Tree> = BTreeMap::new();
    let full: u32 = (1u32 << n) - 1;
    let mut parts: Vec<u32> = Vec::new();
    enumerate_compositions(full, a, &mut parts, &mut |parts| {
        let r = parts.len();
        if let Some(md) = max_dim {
            if n - r > md {
                return;
            }
        }
        let labels: Vec<LeafLabel> = parts
            .iter()
            .map(|&m| {
                LeafLabel::new((0..n).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect())
                    .unwrap()
            })
            .collect();
        let masses: Vec<usize> = labels.iter().map(LeafLabel::len).collect();
        let edge_budget = max_dim.map(|md| md - (n - r));
        for shape in shapes_over(&masses, 0, r, a, edge_budget, true) {
            let t = Tree::new(build_shape(&shape, &labels), variant).canonicalize();
            seen.entry(t.serialize()).or_insert(t);
        }
    });
    let mut out: Vec<Tree> = seen.into_values().collect();
    out.sort_by(|x, y| (x.dim(), x.serialize()).cmp(&(y.dim(), y.serialize())));
    Ok(out)
}

/// Visits every plain tree on `[n]` with singleton leaves (all leaf orders,
/// all shapes) without materializing the full list. Used by oracles and
/// exhaustive property checks.
pub fn for_each_plain_tree(n: usize, f: &mut impl FnMut(&Tree)) -> Result<()> {
    if !(2..=9).contains(&n) {
        return Err(Error::Domain(format!("plain enumeration needs 2 <= n <= 9, got {n}")));
    }
    let masses = vec![1usize; n];
    for perm in Perm::all(n) {
        let labels: Vec<LeafLabel> = perm
            .one_line()
            .iter()
            .map(|&v| LeafLabel::singleton(v))
            .collect();
        for shape in shapes_over(&masses, 0, n, 1, None, true) {
            f(&Tree::new(build_shape(&shape, &labels), Variant::Plain));
        }
    }
    Ok(())
}

/// Enumerates every plain tree on `[n]` with singleton leaves.
pub fn enumerate_plain(n: usize) -> Result<Vec<Tree>> {
    let mut out = Vec::new();
    for_each_plain_tree(n, &mut |t| out.push(t.clone()))?;
    Ok(out)
}

/// Tree shape over leaf slots: `Slot(i)` is the i-th leaf, `Branch` an
/// internal vertex.
#[derive(Clone, Debug)]
enum Shape {
    Slot(usize),
    Branch(Vec<Shape>),
}

fn build_shape(shape: &Shape, labels: &[LeafLabel]) -> Node {
    match shape {
        Shape::Slot(i) => Node::Leaf(labels[*i].clone()),
        Shape::Branch(children) => {
            Node::internal(children.iter().map(|c| build_shape(c, labels)).collect())
        }
    }
}

fn shape_edges(shape: &Shape) -> usize {
    match shape {
        Shape::Slot(_) => 0,
        Shape::Branch(children) => children
            .iter()
            .map(|c| match c {
                Shape::Slot(_) => 0,
                Shape::Branch(_) => 1 + shape_edges(c),
            })
            .sum(),
    }
}

/// All internal-rooted shapes over leaf slots `[lo, hi)` whose every internal
/// vertex has at least 2 children and (when `is_root` is false) mass at
/// least `a + 1`. `edge_budget` bounds the number of internal edges.
fn shapes_over(
    masses: &[usize],
    lo: usize,
    hi: usize,
    a: usize,
    edge_budget: Option<usize>,
    is_root: bool,
) -> Vec<Shape> {
    debug_assert!(hi - lo >= 2);
    if !is_root {
        // a non-root subtree costs at least its parent edge
        if edge_budget == Some(0) {
            return Vec::new();
        }
        let mass: usize = masses[lo..hi].iter().sum();
        if mass < a + 1 {
            return Vec::new();
        }
    }
    // ordered splits of [lo, hi) into >= 2 consecutive blocks
    let mut out = Vec::new();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    split_blocks(lo, hi, true, &mut blocks, &mut |blocks| {
        // each block of length 1 is a leaf slot; longer blocks recurse
        let mut per_block: Vec<Vec<Shape>> = Vec::with_capacity(blocks.len());
        for &(blo, bhi) in blocks {
            if bhi - blo == 1 {
                per_block.push(vec![Shape::Slot(blo)]);
            } else {
                per_block.push(shapes_over(masses, blo, bhi, a, edge_budget, false));
            }
        }
        if per_block.iter().any(Vec::is_empty) {
            return;
        }
        // cartesian product of block choices
        let mut idx = vec![0usize; per_block.len()];
        loop {
            let children: Vec<Shape> = per_block
                .iter()
                .zip(&idx)
                .map(|(v, &i)| v[i].clone())
                .collect();
            let candidate = Shape::Branch(children);
            let ok = match edge_budget {
                Some(budget) => shape_edges(&candidate) <= budget.saturating_sub(usize::from(!is_root)),
                None => true,
            };
            if ok {
                out.push(candidate);
            }
            // advance the mixed-radix counter
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return;
                }
                idx[k] += 1;
                if idx[k] < per_block[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    });
    out
}

/// Calls `f` with every ordered split of `[lo, hi)` into consecutive blocks;
/// at the top level at least 2 blocks are required.
fn split_blocks(
    lo: usize,
    hi: usize,
    top: bool,
    acc: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&[(usize, usize)]),
) {
    if lo == hi {
        if !top && acc.len() >= 2 {
            f(acc);
        }
        return;
    }
    let max_first = if top { hi - lo - 1 } else { hi - lo };
    for len in 1..=max_first {
        acc.push((lo, lo + len));
        split_blocks(lo + len, hi, false, acc, f);
        acc.pop();
    }
}

fn enumerate_compositions(
    remaining: u32,
    a: usize,
    parts: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if remaining == 0 {
        f(parts);
        return;
    }
    // nonempty submasks in descending order
    let mut sub = remaining;
    while sub != 0 {
        if (sub.count_ones() as usize) <= a {
            parts.push(sub);
            enumerate_compositions(remaining & !sub, a, parts, f);
            parts.pop();
        }
        sub = (sub - 1) & remaining;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn parse_and_serialize_roundtrip() {
        let s = "({1,2,3} ({4,5} ({6} {7} {8} {9})))";
        assert_eq!(t(s).serialize(), s);
        let lenient = t("(( {1} {2} {3} )(({4} {5})({6} {7} {8} {9})))");
        assert_eq!(
            lenient.serialize(),
            "(({1} {2} {3}) (({4} {5}) ({6} {7} {8} {9})))"
        );
    }

    #[test]
    fn refined_stars_roundtrip() {
        let s = "*({1,2,3} ({4,5} {6}))";
        let tree = t(s);
        assert_eq!(tree.variant(), Variant::Refined);
        assert_eq!(tree.serialize(), s);
    }

    #[test]
    fn refined_requires_flippable_root() {
        assert!(Tree::parse("({1} *({2} {3}))").is_err());
    }

    #[test]
    fn arity_enforced() {
        assert!(Tree::parse("({1})").is_err());
    }

    #[test]
    fn flip_is_involution() {
        let tree = t("(({1} {2} {3}) (({4} {5}) {6}))");
        for v in [0usize, 1, 5, 6] {
            assert_eq!(tree.flip_at(v).unwrap().flip_at(v).unwrap(), tree);
        }
    }

    #[test]
    fn flip_at_root_reverses_leaves() {
        let tree = t("({1} {2} {3} {4})");
        assert_eq!(tree.flip_at(0).unwrap().serialize(), "({4} {3} {2} {1})");
    }

    #[test]
    fn flip_propagates_down() {
        let tree = t("(({1} {2}) {3})");
        assert_eq!(tree.flip_at(0).unwrap().serialize(), "({3} ({2} {1}))");
    }

    #[test]
    fn flip_at_leaf_errors() {
        assert!(t("({1} {2})").flip_at(1).is_err());
    }

    #[test]
    fn canonicalize_idempotent_and_flip_stable() {
        let tree = Tree::parse_as("(({1} {2} {3}) (({4} {5}) {6}))", Variant::Stable).unwrap();
        let c = tree.canonicalize();
        assert_eq!(c.canonicalize(), c);
        for v in tree.flippable_positions() {
            assert_eq!(tree.flip_at(v).unwrap().canonicalize(), c);
        }
    }

    #[test]
    fn stable_root_orders_identified() {
        let x = Tree::parse_as("({1} {2} {3})", Variant::Stable).unwrap();
        let y = Tree::parse_as("({3} {2} {1})", Variant::Stable).unwrap();
        assert_eq!(x.canonicalize(), y.canonicalize());
        // but not in the double cover
        let x = x.with_variant(Variant::DoubleCoverStable);
        let y = y.with_variant(Variant::DoubleCoverStable);
        assert_ne!(x.canonicalize(), y.canonicalize());
    }

    #[test]
    fn three_distinct_two_stable_trees() {
        // the three 2-stable trees on [4] whose compression is the common
        // 3-stable tree ({1,2,3} {4})
        let keys: BTreeSet<String> = ["(({1} {2} {3}) {4})", "(({1} {3} {2}) {4})", "(({2} {1} {3}) {4})"]
            .iter()
            .map(|s| Tree::parse_as(s, Variant::Stable).unwrap().canonical_key())
            .collect();
        assert_eq!(keys.len(), 3);
    }

    #[test]
    fn compress_fig2() {
        let left = t("(({1} {2} {3}) (({4} {5}) ({6} {7} {8} {9})))");
        let mid = left.compress(3).unwrap();
        assert_eq!(mid.serialize(), "({1,2,3} ({4,5} ({6} {7} {8} {9})))");
        let right = mid.compress_between(3, 7).unwrap();
        assert_eq!(right.serialize(), "({1,2,3} {4,5,6,7,8,9})");
        // composition of the two maps equals the direct compression
        assert_eq!(left.compress(7).unwrap(), right);
        assert!(right.validate_a_stable(9, 7).unwrap().pass());
        assert!(mid.validate_a_stable(9, 3).unwrap().pass());
    }

    #[test]
    fn compress_a1_is_identity() {
        let tree = t("(({1} {2}) ({3} {4}))");
        assert_eq!(tree.compress(1).unwrap(), tree);
    }

    #[test]
    fn compress_top_gives_height_one() {
        let tree = t("(({1} {2}) (({3} {4}) {5}))");
        let c = tree.compress(4).unwrap();
        assert_eq!(c.serialize(), "({1,2} {3,4,5})");
        assert_eq!(c.internal_edge_count(), 0);
    }

    #[test]
    fn compress_between_rejects_decreasing() {
        assert!(t("({1,2,3} {4})").compress_between(3, 2).is_err());
    }

    #[test]
    fn validate_examples() {
        let fig2_mid = t("({1,2,3} ({4,5} ({6} {7} {8} {9})))");
        assert!(fig2_mid.validate_a_stable(9, 3).unwrap().pass());

        let singles = t("({1} {2} {3} {4})");
        for a in 1..=3 {
            assert!(singles.validate_a_stable(4, a).unwrap().pass());
        }

        let light = t("(({1} {2}) {3} {4})");
        let report = light.validate_a_stable(4, 3).unwrap();
        assert!(!report.pass());
        assert_eq!(report.light_subtrees, vec![(1, 2)]);

        // structural error is distinct from a stability failure
        assert!(matches!(
            t("({1,2} {2} {3})").validate_a_stable(3, 2),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            t("({1} {2})").validate_a_stable(3, 2),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn dim_formulas_agree() {
        for tree in ["({1,2,3} {4})", "(({1} {2} {3}) {4})", "(({1} {2}) ({3} {4}))"] {
            let tree = t(tree);
            let n = tree.ground_size();
            assert_eq!(tree.dim() + tree.standard_dim(), n - 2);
        }
    }

    #[test]
    fn enumerate_small_counts() {
        assert_eq!(enumerate_a_stable(2, 1, Variant::Stable, None).unwrap().len(), 1);

        let cells = enumerate_a_stable(4, 3, Variant::Stable, None).unwrap();
        let mut by_dim = [0usize; 3];
        for c in &cells {
            by_dim[c.dim()] += 1;
        }
        assert_eq!(by_dim, [12, 18, 7]);
        assert_eq!(cells.len(), 37);

        let dc = enumerate_a_stable(4, 3, Variant::DoubleCoverStable, None).unwrap();
        let zero: Vec<_> = dc.iter().filter(|c| c.dim() == 0).collect();
        assert_eq!(zero.len(), 24);
        let mut dc_by_dim = [0usize; 3];
        for c in &dc {
            dc_by_dim[c.dim()] += 1;
        }
        assert_eq!(dc_by_dim, [24, 36, 14]);
    }

    #[test]
    fn enumerate_respects_max_dim() {
        let all = enumerate_a_stable(5, 1, Variant::Stable, None).unwrap();
        let low = enumerate_a_stable(5, 1, Variant::Stable, Some(1)).unwrap();
        let expect: Vec<&Tree> = all.iter().filter(|c| c.dim() <= 1).collect();
        assert_eq!(low.len(), expect.len());
    }

    #[test]
    fn covers_hexagon() {
        let hex = Tree::parse_as("({1,2,3} {4})", Variant::Stable).unwrap();
        let faces = hex.covers();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.dim() == hex.dim() - 1));
    }

    #[test]
    fn covers_zero_cell_empty() {
        let p = Tree::parse_as("({1} {2} {3} {4})", Variant::Stable).unwrap();
        assert!(p.covers().is_empty());
    }

    #[test]
    fn closure_hexagon_counts() {
        let hex = Tree::parse_as("({1,2,3} {4})", Variant::Stable).unwrap();
        assert_eq!(hex.closure_poset().counts(), vec![6, 6, 1]);
    }

    #[test]
    fn closure_zero_cell_is_singleton() {
        let p = Tree::parse_as("({2} {1} {3} {4})", Variant::Stable).unwrap();
        let poset = p.closure_poset();
        assert_eq!(poset.counts(), vec![1]);
    }

    #[test]
    fn closure_interval() {
        // one internal edge, all singleton leaves: the two contraction
        // variants are the two endpoints
        let tree = Tree::parse_as("(({1} {2}) {3} {4})", Variant::Stable).unwrap();
        assert_eq!(tree.closure_poset().counts(), vec![2, 1]);
    }

    #[test]
    fn canonicalize_agrees_with_orbit_minimum() {
        // the linear-time canonical form equals the true orbit minimum
        for n in 2..=5 {
            for_each_plain_tree(n, &mut |t| {
                for variant in [Variant::Stable, Variant::DoubleCoverStable] {
                    let tree = t.with_variant(variant);
                    let by_orbit = tree
                        .flip_orbit()
                        .into_iter()
                        .map(|x| x.serialize())
                        .min()
                        .unwrap();
                    assert_eq!(tree.canonicalize().serialize(), by_orbit, "tree {tree}");
                }
            })
            .unwrap();
        }
        // refined variant with a mixed flippable set
        let refined = Tree::parse("*(({1} {2} {3}) *({5} ({4} {6})))").unwrap();
        let by_orbit = refined
            .flip_orbit()
            .into_iter()
            .map(|x| x.serialize())
            .min()
            .unwrap();
        assert_eq!(refined.canonicalize().serialize(), by_orbit);
    }

    #[test]
    fn composition_refinement() {
        let fine = Composition::parse("{1}|{3}|{2,5,6}|{4}|{7,8}").unwrap();
        let coarse = Composition::parse("{1,3}|{2,5,6}|{4}|{7,8}").unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&coarse));
        assert_eq!(coarse.to_string(), "{1,3}|{2,5,6}|{4}|{7,8}");
    }
}
