//! Presentations of the (weighted, oriented) cactus groups: generator
//! symbols `s_{p,q}`, relator words, evaluation into the symmetric group,
//! the quotient map from the classical group, generalized braid relators,
//! presentation derivation from the 2-skeleton, and the index-2 extension
//! by the full reversal.

use crate::cells::{two_skeleton, CellComplex, CoverKind, identity_zero_cell};
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::BTreeSet;
use std::fmt;

/// The generator `s_{p,q}`, `1 <= p < q <= n`, mapping to the interval
/// reversal `w_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSym {
    pub p: usize,
    pub q: usize,
}

impl GenSym {
    pub fn new(p: usize, q: usize) -> Result<GenSym> {
        if p == 0 || p >= q {
            return Err(Error::Domain(format!("need 1 <= p < q, got ({p}, {q})")));
        }
        Ok(GenSym { p, q })
    }

    /// Adjacent transposition `σ_i = s_{i,i+1}`.
    pub fn sigma(i: usize) -> GenSym {
        GenSym { p: i, q: i + 1 }
    }

    /// Conjugation by the full reversal: `s_{p,q} ↦ s_{n+1-q, n+1-p}`.
    pub fn reversed(self, n: usize) -> GenSym {
        GenSym {
            p: n + 1 - self.q,
            q: n + 1 - self.p,
        }
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{}_{}", self.p, self.q)
    }
}

/// A word in the generators. All generators are involutions, so exponents
/// normalize to +1 and inversion is reversal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<GenSym>);

impl Word {
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Involution-aware free reduction followed by cyclic reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<GenSym> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        while out.len() >= 2 && out.first() == out.last() {
            out.pop();
            out.remove(0);
        }
        Word(out)
    }

    /// Canonical form of the relator: reduce, then take the least word over
    /// all rotations of the word and of its inverse.
    pub fn canonical_cyclic(&self) -> Word {
        let reduced = self.reduced();
        let len = reduced.0.len();
        if len == 0 {
            return reduced;
        }
        let mut best: Option<Vec<GenSym>> = None;
        for candidate in [&reduced.0, &reduced.inverse().0] {
            for shift in 0..len {
                let rotated: Vec<GenSym> = candidate
                    .iter()
                    .cycle()
                    .skip(shift)
                    .take(len)
                    .copied()
                    .collect();
                if best.as_ref().is_none_or(|b| rotated < *b) {
                    best = Some(rotated);
                }
            }
        }
        Word(best.unwrap())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let strs: Vec<String> = self.0.iter().map(GenSym::to_string).collect();
        write!(f, "{}", strs.join("*"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresVariant {
    /// All generators, including the full reversal `s_{1,n}`.
    Full,
    /// The index-2 subgroup presentation without `s_{1,n}`.
    Oriented,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub n: usize,
    pub a: usize,
    pub variant: PresVariant,
    pub generators: Vec<GenSym>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn format_text(&self) -> String {
        let mut out = String::new();
        let gens: Vec<String> = self.generators.iter().map(GenSym::to_string).collect();
        out.push_str(&format!("generators: {}\n", gens.join(" ")));
        for r in &self.relators {
            out.push_str(&format!("{r}\n"));
        }
        out
    }

    pub fn format_gap(&self) -> String {
        let names: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("\"{g}\""))
            .collect();
        let mut out = format!("F := FreeGroup({});;\n", names.join(", "));
        out.push_str("AssignGeneratorVariables(F);;\n");
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                let parts: Vec<String> = w.0.iter().map(GenSym::to_string).collect();
                parts.join("*")
            })
            .collect();
        out.push_str(&format!("relators := [ {} ];;\n", rels.join(", ")));
        out.push_str("G := F / relators;;\n");
        out
    }

    pub fn format_json(&self) -> String {
        let gens: Vec<[usize; 2]> = self.generators.iter().map(|g| [g.p, g.q]).collect();
        let rels: Vec<Vec<[usize; 2]>> = self
            .relators
            .iter()
            .map(|w| w.0.iter().map(|g| [g.p, g.q]).collect())
            .collect();
        serde_json::json!({ "n": self.n, "a": self.a, "generators": gens, "relators": rels })
            .to_string()
    }
}

/// Generator alphabet of the weighted cactus group: for `a >= 3` the
/// symbols `s_{p,q}` with `q - p = 1` or `q - p >= a`; for `a <= 2` the full
/// classical alphabet. The oriented variant drops `s_{1,n}`.
fn alphabet(n: usize, a: usize, variant: PresVariant) -> Vec<GenSym> {
    let mut out = Vec::new();
    for p in 1..n {
        for q in (p + 1)..=n {
            let len = q - p;
            let in_weighted = len == 1 || len >= a;
            if a >= 3 && !in_weighted {
                continue;
            }
            if variant == PresVariant::Oriented && (p, q) == (1, n) {
                continue;
            }
            out.push(GenSym { p, q });
        }
    }
    out
}

/// The stated presentation of the weighted cactus group: involutions,
/// commuting relators for disjoint intervals, cactus relators for properly
/// nested intervals, and (for `a >= 3`) the braid relators. For `a <= 2`
/// this is the classical cactus presentation on the full alphabet.
pub fn stated_presentation(n: usize, a: usize, variant: PresVariant) -> Result<Presentation> {
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got n={n}")));
    }
    if a == 0 || a >= n {
        return Err(Error::Domain(format!("need 1 <= a <= n-1, got a={a}, n={n}")));
    }
    let generators = alphabet(n, a, variant);
    let in_alphabet = |g: &GenSym| generators.binary_search(g).is_ok();
    let mut relators: Vec<Word> = Vec::new();
    for &g in &generators {
        relators.push(Word(vec![g, g]));
    }
    // commuting: p < q < m < r
    for &x in &generators {
        for &y in &generators {
            if x.q < y.p {
                relators.push(Word(vec![x, y, x, y]));
            }
        }
    }
    // cactus: p <= m < r <= q, proper nesting
    for &outer in &generators {
        for &inner in &generators {
            if inner == outer || inner.p < outer.p || inner.q > outer.q {
                continue;
            }
            let reflected = GenSym {
                p: outer.p + outer.q - inner.q,
                q: outer.p + outer.q - inner.p,
            };
            debug_assert!(in_alphabet(&reflected));
            relators.push(Word(vec![outer, inner, outer, reflected]));
        }
    }
    if a >= 3 {
        for i in 1..=n - 2 {
            let x = GenSym::sigma(i);
            let y = GenSym::sigma(i + 1);
            relators.push(Word(vec![x, y, x, y, x, y]));
        }
    }
    Ok(Presentation {
        n,
        a,
        variant,
        generators,
        relators,
    })
}

/// Evaluates a word under `s_{p,q} ↦ w_{p,q}`, composing right to left.
pub fn to_sym(w: &Word, n: usize) -> Result<Perm> {
    let mut acc = Perm::identity(n);
    for g in &w.0 {
        if g.q > n {
            return Err(Error::Domain(format!("{g} does not fit in S_{n}")));
        }
        acc = acc.compose(&Perm::interval_reversal(g.p, g.q, n)?);
    }
    Ok(acc)
}

/// The canonical reduced word for the interval reversal `w_{p,q}` in
/// adjacent transpositions: the bubble-sort form
/// `(σ_p)(σ_{p+1} σ_p)(σ_{p+2} σ_{p+1} σ_p) ...` restricted to the interval.
pub fn reversal_sigma_word(p: usize, q: usize) -> Word {
    let mut letters = Vec::new();
    for t in (p + 1)..=q {
        for j in (p..t).rev() {
            letters.push(GenSym::sigma(j));
        }
    }
    Word(letters)
}

/// Image of a classical-generator word under the quotient onto the weighted
/// group: short generators (interval of at most `a` marks) are rewritten as
/// reduced words in adjacent transpositions, long generators survive.
pub fn quotient_image(w: &Word, a: usize) -> Result<Word> {
    if a < 3 {
        return Err(Error::Domain("the quotient map needs a >= 3".into()));
    }
    let mut letters = Vec::new();
    for &g in &w.0 {
        if g.q - g.p + 1 > a {
            letters.push(g);
        } else {
            letters.extend(reversal_sigma_word(g.p, g.q).0);
        }
    }
    Ok(Word(letters))
}

/// A generalized braid relator together with its image in the weighted
/// group (a word in adjacent transpositions only).
#[derive(Clone, Debug)]
pub struct BraidRelator {
    pub relator: Word,
    pub image: Word,
}

/// The two families of generalized braid relators, for all `p < q` with
/// `2 <= q - p <= a - 1`: `s_{p,q} s_{p,q-1} σ_{q-1} ... σ_p` and
/// `s_{p,q} σ_{q-1} ... σ_p s_{p+1,q}`. Both lie in the kernel of the
/// quotient from the classical group.
pub fn generalized_braid_relators(n: usize, a: usize) -> Result<Vec<BraidRelator>> {
    if a < 3 {
        return Err(Error::Domain("generalized braid relators need a >= 3".into()));
    }
    if a >= n {
        return Err(Error::Domain(format!("need a <= n-1, got a={a}, n={n}")));
    }
    let mut out = Vec::new();
    for p in 1..=n {
        for q in (p + 2)..=n {
            if q - p > a - 1 {
                continue;
            }
            let descent: Vec<GenSym> = (p..q).rev().map(GenSym::sigma).collect();
            let mut first = vec![GenSym { p, q }, GenSym { p, q: q - 1 }];
            first.extend(&descent);
            let mut second = vec![GenSym { p, q }];
            second.extend(&descent);
            second.push(GenSym { p: p + 1, q });
            for relator in [Word(first), Word(second)] {
                let image = quotient_image(&relator, a)?;
                out.push(BraidRelator { relator, image });
            }
        }
    }
    Ok(out)
}

/// Reads a presentation of the oriented group off the labeled 2-skeleton of
/// the double cover: generators are the 1-cells at the base point, relators
/// the boundary words of the 2-cells at the base point plus the involutions.
pub fn derive_presentation(cx: &CellComplex) -> Result<Presentation> {
    if cx.cover != CoverKind::Double {
        return Err(Error::Domain(
            "presentations are derived from the double cover".into(),
        ));
    }
    let basepoint = identity_zero_cell(cx.n, cx.cover);
    let skeleton = two_skeleton(cx, &basepoint)?;
    let mut generators: Vec<GenSym> = Vec::new();
    for c in &skeleton.one_cells {
        let g = GenSym::new(c.label.0, c.label.1)?;
        generators.push(g);
    }
    generators.sort();
    let before = generators.len();
    generators.dedup();
    if generators.len() != before {
        return Err(Error::Domain("duplicate 1-cell labels at basepoint".into()));
    }
    let gen_set: BTreeSet<GenSym> = generators.iter().copied().collect();
    let mut relators: Vec<Word> = Vec::new();
    for &g in &generators {
        relators.push(Word(vec![g, g]));
    }
    for c in &skeleton.two_cells {
        let word = Word(
            c.word
                .iter()
                .map(|&(p, q)| GenSym::new(p, q))
                .collect::<Result<Vec<GenSym>>>()?,
        );
        for g in &word.0 {
            if !gen_set.contains(g) {
                return Err(Error::Domain(format!(
                    "boundary letter {g} is not a 1-cell label at the basepoint"
                )));
            }
        }
        relators.push(word);
    }
    Ok(Presentation {
        n: cx.n,
        a: cx.a,
        variant: PresVariant::Oriented,
        generators,
        relators,
    })
}

/// Extends an oriented presentation by the full reversal: adds the
/// generator `α = s_{1,n}` with `α²` and the conjugation relators
/// `α s α ι(s)` where `ι` reverses index intervals.
pub fn extend_by_flip(p: &Presentation) -> Result<Presentation> {
    if p.variant != PresVariant::Oriented {
        return Err(Error::Domain("can only extend an oriented presentation".into()));
    }
    let n = p.n;
    let gen_set: BTreeSet<GenSym> = p.generators.iter().copied().collect();
    for g in &p.generators {
        if !gen_set.contains(&g.reversed(n)) {
            return Err(Error::Domain(format!(
                "alphabet is not closed under reversal: missing {}",
                g.reversed(n)
            )));
        }
    }
    let alpha = GenSym { p: 1, q: n };
    let mut generators = p.generators.clone();
    generators.push(alpha);
    generators.sort();
    let mut relators = p.relators.clone();
    relators.push(Word(vec![alpha, alpha]));
    for &g in &p.generators {
        relators.push(Word(vec![alpha, g, alpha, g.reversed(n)]));
    }
    Ok(Presentation {
        n,
        a: p.a,
        variant: PresVariant::Full,
        generators,
        relators,
    })
}

/// Structural equality of presentations: generator sets equal, and relator
/// sets equal after involution-aware free and cyclic reduction and
/// minimizing over rotations and inversion. Trivial relators drop out.
pub fn presentations_equal(p1: &Presentation, p2: &Presentation) -> bool {
    let g1: BTreeSet<GenSym> = p1.generators.iter().copied().collect();
    let g2: BTreeSet<GenSym> = p2.generators.iter().copied().collect();
    if g1 != g2 {
        return false;
    }
    let canon = |p: &Presentation| -> BTreeSet<Word> {
        p.relators
            .iter()
            .map(Word::canonical_cyclic)
            .filter(|w| !w.0.is_empty())
            .collect()
    };
    canon(p1) == canon(p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::build_complex;

    #[test]
    fn alphabet_counts() {
        let full = stated_presentation(5, 3, PresVariant::Full).unwrap();
        assert_eq!(full.generators.len(), 7); // 4 adjacent + (1,4), (2,5), (1,5)
        let oriented = stated_presentation(5, 3, PresVariant::Oriented).unwrap();
        assert_eq!(oriented.generators.len(), 6);
        let classical = stated_presentation(5, 1, PresVariant::Full).unwrap();
        assert_eq!(classical.generators.len(), 10);
    }

    #[test]
    fn stated_n4_a3_full_relators() {
        let p = stated_presentation(4, 3, PresVariant::Full).unwrap();
        let gens: Vec<String> = p.generators.iter().map(GenSym::to_string).collect();
        assert_eq!(gens, vec!["s_1_2", "s_1_4", "s_2_3", "s_3_4"]);
        let canon: BTreeSet<Word> = p.relators.iter().map(Word::canonical_cyclic).collect();
        // the three conjugation relators for s_{1,4}
        for text in [
            vec![(1, 4), (1, 2), (1, 4), (3, 4)],
            vec![(1, 4), (2, 3), (1, 4), (2, 3)],
            vec![(1, 4), (3, 4), (1, 4), (1, 2)],
        ] {
            let w = Word(text.iter().map(|&(p, q)| GenSym { p, q }).collect());
            assert!(
                canon.contains(&w.canonical_cyclic()),
                "missing relator {w}"
            );
        }
        // braid relators for sigma_1 sigma_2 and sigma_2 sigma_3
        let braid = Word(vec![
            GenSym::sigma(1),
            GenSym::sigma(2),
            GenSym::sigma(1),
            GenSym::sigma(2),
            GenSym::sigma(1),
            GenSym::sigma(2),
        ]);
        assert!(canon.contains(&braid.canonical_cyclic()));
    }

    #[test]
    fn every_relator_maps_to_identity() {
        for n in 3..=6 {
            for a in 1..n {
                for variant in [PresVariant::Full, PresVariant::Oriented] {
                    let p = stated_presentation(n, a, variant).unwrap();
                    for r in &p.relators {
                        assert!(
                            to_sym(r, n).unwrap().is_identity(),
                            "relator {r} of (n={n}, a={a}) not in the kernel"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn to_sym_examples() {
        let w = Word(vec![GenSym::sigma(1)]);
        assert_eq!(to_sym(&w, 3).unwrap(), Perm::interval_reversal(1, 2, 3).unwrap());
        let w = Word(vec![
            GenSym { p: 1, q: 3 },
            GenSym { p: 1, q: 2 },
            GenSym { p: 2, q: 3 },
            GenSym { p: 1, q: 2 },
        ]);
        assert!(to_sym(&w, 4).unwrap().is_identity());
    }

    #[test]
    fn quotient_image_examples() {
        let w = Word(vec![GenSym::sigma(1)]);
        assert_eq!(quotient_image(&w, 3).unwrap(), w);

        let w = Word(vec![GenSym { p: 1, q: 3 }]);
        let img = quotient_image(&w, 3).unwrap();
        assert_eq!(
            img.0,
            vec![GenSym::sigma(1), GenSym::sigma(2), GenSym::sigma(1)]
        );
        assert_eq!(to_sym(&img, 3).unwrap(), Perm::interval_reversal(1, 3, 3).unwrap());

        let w = Word(vec![GenSym { p: 1, q: 4 }]);
        assert_eq!(quotient_image(&w, 3).unwrap(), w);
    }

    #[test]
    fn generalized_braid_examples() {
        let relators = generalized_braid_relators(4, 3).unwrap();
        // (p,q) = (1,3), (2,4): two relators each
        assert_eq!(relators.len(), 4);
        for r in &relators {
            assert!(to_sym(&r.relator, 4).unwrap().is_identity());
            assert!(to_sym(&r.image, 4).unwrap().is_identity());
            // images use adjacent transpositions only
            assert!(r.image.0.iter().all(|g| g.q == g.p + 1));
        }
        let first = &relators[0];
        assert_eq!(
            first.relator.0,
            vec![
                GenSym { p: 1, q: 3 },
                GenSym { p: 1, q: 2 },
                GenSym::sigma(2),
                GenSym::sigma(1)
            ]
        );
        // q - p = 2 reduces to the classical braid relation after
        // cancelling the short generator
        let img = first.image.reduced();
        assert!(img.0.is_empty());
        let second = &relators[1];
        let img = second.image.canonical_cyclic();
        let braid = Word(vec![
            GenSym::sigma(1),
            GenSym::sigma(2),
            GenSym::sigma(1),
            GenSym::sigma(2),
            GenSym::sigma(1),
            GenSym::sigma(2),
        ]);
        assert_eq!(img, braid.canonical_cyclic());
    }

    #[test]
    fn canonical_cyclic_identifies_rotations() {
        let a = GenSym::sigma(1);
        let b = GenSym::sigma(2);
        let w1 = Word(vec![a, b, a, b, a, b]);
        let w2 = Word(vec![b, a, b, a, b, a]);
        assert_eq!(w1.canonical_cyclic(), w2.canonical_cyclic());
        let w3 = Word(vec![a, a]);
        assert!(w3.canonical_cyclic().0.is_empty());
    }

    #[test]
    fn reversal_map_examples() {
        assert_eq!(GenSym { p: 1, q: 2 }.reversed(4), GenSym { p: 3, q: 4 });
        for (p, q) in [(1, 2), (2, 3), (1, 3)] {
            let w = Word(vec![
                GenSym { p: 1, q: 4 },
                GenSym { p, q },
                GenSym { p: 1, q: 4 },
                GenSym { p, q }.reversed(4),
            ]);
            assert!(to_sym(&w, 4).unwrap().is_identity());
        }
    }

    #[test]
    fn extend_matches_stated_full() {
        for (n, a) in [(4, 3), (5, 3), (5, 4), (4, 1)] {
            let oriented = stated_presentation(n, a, PresVariant::Oriented).unwrap();
            let extended = extend_by_flip(&oriented).unwrap();
            let full = stated_presentation(n, a, PresVariant::Full).unwrap();
            assert!(
                presentations_equal(&extended, &full),
                "extension mismatch at (n={n}, a={a})"
            );
        }
    }

    #[test]
    fn derived_matches_stated_small() {
        for (n, a) in [(4, 3), (4, 1), (5, 4)] {
            let cx = build_complex(n, a, CoverKind::Double, Some(2), true).unwrap();
            let derived = derive_presentation(&cx).unwrap();
            let stated = stated_presentation(n, a, PresVariant::Oriented).unwrap();
            assert!(
                presentations_equal(&derived, &stated),
                "derived vs stated mismatch at (n={n}, a={a}):\nderived:\n{}\nstated:\n{}",
                derived.format_text(),
                stated.format_text()
            );
        }
    }
}
