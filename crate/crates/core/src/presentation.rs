//! Relation generation: handle identifications, braid relations, star
//! relations, and the derived lantern relations.
//!
//! Relations are stored as equations `lhs = rhs`; derivation scripts
//! reference both sides positionally, so conversion to relators happens
//! only at export time.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{CurveConfiguration, CurveId, IntersectionClass, SurfaceSignature};
use crate::word::{Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("({0}, {1}, {2}) is not a good triple")]
    BadTriple(u32, u32, u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Handle,
    Braid,
    Star,
    Derived,
}

/// A named relation `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Equation {
    pub name: String,
    pub kind: RelationKind,
    pub lhs: Word,
    pub rhs: Word,
}

impl Equation {
    pub fn new(name: impl Into<String>, kind: RelationKind, lhs: Word, rhs: Word) -> Self {
        Equation {
            name: name.into(),
            kind,
            lhs,
            rhs,
        }
    }

    /// Same equation up to swapping the two sides.
    pub fn same_unordered(&self, lhs: &Word, rhs: &Word) -> bool {
        (&self.lhs == lhs && &self.rhs == rhs) || (&self.lhs == rhs && &self.rhs == lhs)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    pub signature: SurfaceSignature,
    pub generators: Vec<CurveId>,
    pub relations: Vec<Equation>,
}

impl Presentation {
    pub fn relation(&self, name: &str) -> Option<&Equation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn c(i: u32, j: u32) -> Word {
    Word::gen(CurveId::Cij(i, j))
}

fn a(i: u32) -> Word {
    Word::gen(CurveId::Ai(i))
}

fn b() -> Word {
    Word::gen(CurveId::B)
}

/// Handle relations `c_{2i,2i+1} = c_{2i-1,2i}`, `1 <= i <= g-1`, indices cyclic.
pub fn handle_relations(sig: &SurfaceSignature) -> Vec<Equation> {
    let mut out = Vec::new();
    for i in 1..sig.genus() {
        let lhs = c(
            sig.cyclic_index(2 * i as i64),
            sig.cyclic_index(2 * i as i64 + 1),
        );
        let rhs = c(
            sig.cyclic_index(2 * i as i64 - 1),
            sig.cyclic_index(2 * i as i64),
        );
        out.push(Equation::new(format!("A_{i}"), RelationKind::Handle, lhs, rhs));
    }
    out
}

/// Name of the braid/commutation relation of a generator pair, in
/// canonical enumeration order.
pub fn braid_name(x: CurveId, y: CurveId) -> String {
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    format!("T_{}_{}", x.token(), y.token())
}

/// One relation per unordered generator pair meeting in zero points
/// (commutation) or one point (braid); pairs meeting more often produce
/// no relation.
pub fn braid_relations(sig: &SurfaceSignature, config: &CurveConfiguration) -> Vec<Equation> {
    let gens = sig.enumerate_generators();
    let mut out = Vec::new();
    for (ix, &x) in gens.iter().enumerate() {
        for &y in gens.iter().skip(ix + 1) {
            let xw = Word::gen(x);
            let yw = Word::gen(y);
            match config.intersection_class(x, y) {
                IntersectionClass::Zero => out.push(Equation::new(
                    braid_name(x, y),
                    RelationKind::Braid,
                    Word::concat(&[&xw, &yw]),
                    Word::concat(&[&yw, &xw]),
                )),
                IntersectionClass::One => out.push(Equation::new(
                    braid_name(x, y),
                    RelationKind::Braid,
                    Word::concat(&[&xw, &yw, &xw]),
                    Word::concat(&[&yw, &xw, &yw]),
                )),
                IntersectionClass::Many => {}
            }
        }
    }
    out
}

/// The star word `c_{i,j} c_{j,k} c_{k,i}` with identity factors
/// `c_{l,l}` omitted.
pub fn star_lhs(i: u32, j: u32, k: u32) -> Word {
    let mut letters = Vec::new();
    for (p, q) in [(i, j), (j, k), (k, i)] {
        if p != q {
            letters.push(Letter::pos(CurveId::Cij(p, q)));
        }
    }
    Word::from_letters(letters)
}

/// `(a_i a_j a_k b)^3`.
pub fn star_rhs(i: u32, j: u32, k: u32) -> Word {
    Word::concat(&[&a(i), &a(j), &a(k), &b()]).pow(3)
}

pub fn star_name(i: u32, j: u32, k: u32) -> String {
    format!("E_{i}_{j}_{k}")
}

/// One star relation per good triple, lexicographic order.
pub fn star_relations(sig: &SurfaceSignature) -> Vec<Equation> {
    sig.enumerate_good_triples()
        .into_iter()
        .map(|(i, j, k)| {
            Equation::new(
                star_name(i, j, k),
                RelationKind::Star,
                star_lhs(i, j, k),
                star_rhs(i, j, k),
            )
        })
        .collect()
}

/// The three commuting words of the star lemma:
/// `X1 = a_i a_j`, `X2 = b X1 b`, `X3 = a_k X2 a_k`.
pub fn star_lemma_words(i: u32, j: u32, k: u32) -> (Word, Word, Word) {
    let x1 = Word::concat(&[&a(i), &a(j)]);
    let x2 = Word::concat(&[&b(), &x1, &b()]);
    let x3 = Word::concat(&[&a(k), &x2, &a(k)]);
    (x1, x2, x3)
}

/// The lantern relation
/// `a_i c_{i,j} c_{j,k} a_k = c_{i,k} a_j X a_j X^{-1}`, `X = b a_i a_k b`,
/// with identity factors omitted. Defined for good triples only.
pub fn lantern_relation(
    sig: &SurfaceSignature,
    i: u32,
    j: u32,
    k: u32,
) -> Result<Equation, PresentationError> {
    if !sig.is_good_triple(i, j, k) {
        return Err(PresentationError::BadTriple(i, j, k));
    }
    let x = Word::concat(&[&b(), &a(i), &a(k), &b()]);
    let mut lhs_parts: Vec<Word> = vec![a(i)];
    if i != j {
        lhs_parts.push(c(i, j));
    }
    if j != k {
        lhs_parts.push(c(j, k));
    }
    lhs_parts.push(a(k));
    let lhs = Word::concat(&lhs_parts.iter().collect::<Vec<_>>());
    let mut rhs_parts: Vec<Word> = Vec::new();
    if i != k {
        rhs_parts.push(c(i, k));
    }
    rhs_parts.push(a(j));
    rhs_parts.push(x.clone());
    rhs_parts.push(a(j));
    rhs_parts.push(x.inverse());
    let rhs = Word::concat(&rhs_parts.iter().collect::<Vec<_>>());
    Ok(Equation::new(
        format!("L_{i}_{j}_{k}"),
        RelationKind::Derived,
        lhs,
        rhs,
    ))
}

/// The full presentation: handles (optional), braids, stars. With
/// `include_handles` unset, the generators `c_{2i,2i+1}` are eliminated
/// by substituting `c_{2i-1,2i}`, relations that become trivial or
/// duplicate are dropped, and the handle family is omitted.
pub fn presentation(
    sig: &SurfaceSignature,
    config: &CurveConfiguration,
    include_handles: bool,
) -> Presentation {
    let mut relations = Vec::new();
    if include_handles {
        relations.extend(handle_relations(sig));
    }
    relations.extend(braid_relations(sig, config));
    relations.extend(star_relations(sig));

    let mut generators = sig.enumerate_generators();
    if !include_handles {
        let mut subst: Vec<(CurveId, CurveId)> = Vec::new();
        for i in 1..sig.genus() {
            let eliminated = CurveId::Cij(
                sig.cyclic_index(2 * i as i64),
                sig.cyclic_index(2 * i as i64 + 1),
            );
            let replacement = CurveId::Cij(
                sig.cyclic_index(2 * i as i64 - 1),
                sig.cyclic_index(2 * i as i64),
            );
            subst.push((eliminated, replacement));
        }
        let substitute = |w: &Word| -> Word {
            Word::from_letters(
                w.letters()
                    .iter()
                    .map(|l| {
                        for &(from, to) in &subst {
                            if l.id == from {
                                return Letter::new(to, l.exp);
                            }
                        }
                        *l
                    })
                    .collect(),
            )
        };
        generators.retain(|g| !subst.iter().any(|(from, _)| from == g));
        let mut seen: Vec<(Word, Word)> = Vec::new();
        relations = relations
            .into_iter()
            .filter_map(|eq| {
                let lhs = substitute(&eq.lhs);
                let rhs = substitute(&eq.rhs);
                if lhs.reduce() == rhs.reduce() {
                    return None;
                }
                if seen.iter().any(|(l, r)| {
                    (l == &lhs && r == &rhs) || (l == &rhs && r == &lhs)
                }) {
                    return None;
                }
                seen.push((lhs.clone(), rhs.clone()));
                Some(Equation { lhs, rhs, ..eq })
            })
            .collect();
    }

    Presentation {
        signature: *sig,
        generators,
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_signature;

    fn cfg(g: i64, n: i64) -> (SurfaceSignature, CurveConfiguration) {
        let sig = make_signature(g, n).unwrap();
        let cfg = CurveConfiguration::for_signature(&sig);
        (sig, cfg)
    }

    #[test]
    fn handle_relation_examples() {
        let (sig, _) = cfg(2, 0);
        let rels = handle_relations(&sig);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].lhs.to_string(), "c2_1");
        assert_eq!(rels[0].rhs.to_string(), "c1_2");

        let (sig, _) = cfg(1, 3);
        assert!(handle_relations(&sig).is_empty());

        let (sig, _) = cfg(3, 0);
        let rels = handle_relations(&sig);
        assert_eq!(rels.len(), 2);
        assert_eq!(rels[0].lhs.to_string(), "c2_3");
        assert_eq!(rels[0].rhs.to_string(), "c1_2");
        assert_eq!(rels[1].lhs.to_string(), "c4_1");
        assert_eq!(rels[1].rhs.to_string(), "c3_4");
    }

    #[test]
    fn braid_relation_examples() {
        let (sig, config) = cfg(1, 1);
        let rels = braid_relations(&sig, &config);
        assert_eq!(rels.len(), 1);
        assert!(rels[0].same_unordered(
            &"a1 b a1".parse().unwrap(),
            &"b a1 b".parse().unwrap()
        ));

        let (sig, config) = cfg(2, 0);
        let rels = braid_relations(&sig, &config);
        let find = |x: CurveId, y: CurveId| {
            rels.iter()
                .find(|r| r.name == braid_name(x, y))
                .unwrap_or_else(|| panic!("missing relation for ({x},{y})"))
        };
        assert!(find(CurveId::Bi(1), CurveId::Ai(2)).same_unordered(
            &"b1 a2 b1".parse().unwrap(),
            &"a2 b1 a2".parse().unwrap()
        ));
        assert!(find(CurveId::B, CurveId::Ai(1)).same_unordered(
            &"b a1 b".parse().unwrap(),
            &"a1 b a1".parse().unwrap()
        ));
        assert!(find(CurveId::Ai(1), CurveId::Ai(2)).same_unordered(
            &"a1 a2".parse().unwrap(),
            &"a2 a1".parse().unwrap()
        ));
        // every emitted relation's shape matches its pair's class
        for r in &rels {
            match r.lhs.len() {
                2 => assert_eq!(r.rhs.len(), 2),
                3 => assert_eq!(r.rhs.len(), 3),
                n => panic!("unexpected braid relation arity {n}"),
            }
        }
    }

    #[test]
    fn star_relation_examples() {
        let (sig, _) = cfg(2, 0);
        let rels = star_relations(&sig);
        assert_eq!(rels.len(), 6);
        let e112 = rels.iter().find(|r| r.name == "E_1_1_2").unwrap();
        assert_eq!(e112.lhs.to_string(), "c1_2 c2_1");
        assert_eq!(e112.rhs.to_string(), "a1 a1 a2 b a1 a1 a2 b a1 a1 a2 b");

        let (sig, _) = cfg(3, 0);
        let rels = star_relations(&sig);
        let e123 = rels.iter().find(|r| r.name == "E_1_2_3").unwrap();
        assert_eq!(e123.lhs.to_string(), "c1_2 c2_3 c3_1");

        let (sig, _) = cfg(1, 1);
        assert!(star_relations(&sig).is_empty());
    }

    #[test]
    fn star_lemma_word_examples() {
        let (x1, x2, x3) = star_lemma_words(1, 2, 3);
        assert_eq!(x1.to_string(), "a1 a2");
        assert_eq!(x2.to_string(), "b a1 a2 b");
        assert_eq!(x3.to_string(), "a3 b a1 a2 b a3");
    }

    #[test]
    fn lantern_examples() {
        let (sig, _) = cfg(3, 0); // N = 4
        let l = lantern_relation(&sig, 1, 2, 4).unwrap();
        assert_eq!(l.lhs.to_string(), "a1 c1_2 c2_4 a4");
        assert_eq!(l.rhs.to_string(), "c1_4 a2 b a1 a4 b a2 b' a4' a1' b'");
        assert_eq!(
            lantern_relation(&sig, 1, 3, 2),
            Err(PresentationError::BadTriple(1, 3, 2))
        );
        let l = lantern_relation(&sig, 2, 3, 4).unwrap();
        assert!(l.rhs.to_string().contains("b a2 a4 b"));
    }

    #[test]
    fn presentation_counts() {
        let (sig, config) = cfg(2, 0);
        let p = presentation(&sig, &config, true);
        assert_eq!(p.generators.len(), 6);
        assert_eq!(
            p.relations
                .iter()
                .filter(|r| r.kind == RelationKind::Handle)
                .count(),
            1
        );
        assert_eq!(
            p.relations
                .iter()
                .filter(|r| r.kind == RelationKind::Star)
                .count(),
            6
        );

        let (sig, config) = cfg(1, 1);
        let p = presentation(&sig, &config, true);
        assert_eq!(p.generators, vec![CurveId::B, CurveId::Ai(1)]);
        assert_eq!(p.relations.len(), 1);
        assert!(p.relations[0].same_unordered(
            &"a1 b a1".parse().unwrap(),
            &"b a1 b".parse().unwrap()
        ));
    }

    #[test]
    fn handle_elimination() {
        let (sig, config) = cfg(2, 0);
        let p = presentation(&sig, &config, false);
        assert_eq!(p.generators.len(), 5);
        assert!(!p.generators.contains(&CurveId::Cij(2, 1)));
        for r in &p.relations {
            assert!(r.kind != RelationKind::Handle);
            for l in r.lhs.letters().iter().chain(r.rhs.letters()) {
                assert!(l.id != CurveId::Cij(2, 1), "c2_1 must be substituted away");
            }
        }
        // every curve appearing in a relation is a listed generator
        for r in &p.relations {
            for l in r.lhs.letters().iter().chain(r.rhs.letters()) {
                assert!(p.generators.contains(&l.id));
            }
        }
    }

    #[test]
    fn relation_names_are_unique() {
        for (g, n) in [(1, 1), (2, 0), (2, 1), (3, 0)] {
            let (sig, config) = cfg(g, n);
            for handles in [true, false] {
                let p = presentation(&sig, &config, handles);
                let mut names: Vec<&str> =
                    p.relations.iter().map(|r| r.name.as_str()).collect();
                names.sort();
                let before = names.len();
                names.dedup();
                assert_eq!(before, names.len());
            }
        }
    }
}
