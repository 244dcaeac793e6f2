//! The boundary-capping homomorphism `g2` at the word level, its kernel
//! generators, and the extra relators of the minimal twist presentation.
//!
//! `g2` caps the last boundary component with a disc, sending the
//! generators of the `(g, n)` group to generators of the `(g, n-1)`
//! group. Equality in the target is never decided; all verification
//! routes through the homology oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{mat_mul, IntMatrix};
use crate::homology::{evaluate, OracleReport, ReportEntry};
use crate::presentation::{presentation, Equation, RelationKind};
use crate::surface::{make_signature, CurveConfiguration, CurveId, SurfaceSignature};
use crate::word::{conjugate, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("capping the boundary of {0} gives a degenerate signature")]
    DegenerateTarget(SurfaceSignature),
}

/// A generator-to-word substitution between two signatures.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GenMap {
    source: SurfaceSignature,
    target: SurfaceSignature,
    table: BTreeMap<CurveId, Word>,
}

impl GenMap {
    pub fn source(&self) -> &SurfaceSignature {
        &self.source
    }

    pub fn target(&self) -> &SurfaceSignature {
        &self.target
    }

    pub fn image(&self, c: CurveId) -> Option<&Word> {
        self.table.get(&c)
    }

    /// Fault-injection hook: override one image.
    pub fn set_image(&mut self, c: CurveId, w: Word) {
        self.table.insert(c, w);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("generator map serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// The capping map table: the last leg folds onto the first, the curve
/// through the capped boundary collapses, and `c_{1,N}` becomes the
/// fourth power `(a1 b a1)^4`.
pub fn g2_generator_map(sig: &SurfaceSignature) -> Result<GenMap, MorphismError> {
    let target = make_signature(sig.genus() as i64, sig.boundary_count() as i64 - 1)
        .map_err(|_| MorphismError::DegenerateTarget(*sig))?;
    let n = sig.legs();
    debug_assert_eq!(target.legs(), n - 1);
    let mut table = BTreeMap::new();
    table.insert(CurveId::B, Word::gen(CurveId::B));
    for i in 1..sig.genus() {
        table.insert(CurveId::Bi(i), Word::gen(CurveId::Bi(i)));
    }
    for i in 1..n {
        table.insert(CurveId::Ai(i), Word::gen(CurveId::Ai(i)));
    }
    table.insert(CurveId::Ai(n), Word::gen(CurveId::Ai(1)));
    for i in 1..n {
        for j in 1..n {
            if i != j {
                table.insert(CurveId::Cij(i, j), Word::gen(CurveId::Cij(i, j)));
            }
        }
    }
    for i in 2..n {
        table.insert(CurveId::Cij(i, n), Word::gen(CurveId::Cij(i, 1)));
        table.insert(CurveId::Cij(n, i), Word::gen(CurveId::Cij(1, i)));
    }
    let a1 = Word::gen(CurveId::Ai(1));
    let b = Word::gen(CurveId::B);
    table.insert(CurveId::Cij(1, n), Word::concat(&[&a1, &b, &a1]).pow(4));
    table.insert(CurveId::Cij(n, 1), Word::empty());
    Ok(GenMap {
        source: *sig,
        target,
        table,
    })
}

/// Letterwise substitution followed by free reduction.
pub fn apply_gen_map(map: &GenMap, w: &Word) -> Word {
    let mut parts = Vec::new();
    for l in w.letters() {
        let image = map
            .table
            .get(&l.id)
            .unwrap_or_else(|| panic!("no image for generator {}", l.id));
        if l.exp == 1 {
            parts.push(image.clone());
        } else {
            parts.push(image.inverse());
        }
    }
    Word::concat(&parts.iter().collect::<Vec<_>>()).reduce()
}

/// The linear shadow of capping: the basis projection killing the class
/// dual to the capped boundary. Rows index the target basis, columns the
/// source basis.
pub fn collapse_matrix(sig: &SurfaceSignature) -> IntMatrix {
    let src_rank = sig.homology_rank();
    let tgt_rank = make_signature(sig.genus() as i64, sig.boundary_count() as i64 - 1)
        .map(|t| t.homology_rank())
        .unwrap_or(0);
    let mut p = vec![vec![BigInt::zero(); src_rank]; tgt_rank];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    p
}

fn twist_to_matrix(m: &crate::homology::TwistMatrix) -> IntMatrix {
    m.rows().to_vec()
}

/// Deterministic word generator for the commuting-square samples.
struct WordSampler {
    state: u64,
    gens: Vec<CurveId>,
}

impl WordSampler {
    fn new(seed: u64, sig: &SurfaceSignature) -> Self {
        WordSampler {
            state: seed | 1,
            gens: sig.enumerate_generators(),
        }
    }

    fn next_u64(&mut self) -> u64 {
        self.state ^= self.state << 13;
        self.state ^= self.state >> 7;
        self.state ^= self.state << 17;
        self.state
    }

    fn word(&mut self, max_len: usize) -> Word {
        let len = (self.next_u64() as usize) % (max_len + 1);
        let letters = (0..len)
            .map(|_| {
                let id = self.gens[(self.next_u64() as usize) % self.gens.len()];
                if self.next_u64() % 2 == 0 {
                    Letter::pos(id)
                } else {
                    Letter::neg(id)
                }
            })
            .collect();
        Word::from_letters(letters)
    }
}

/// Checks that every relation of the source presentation maps to a
/// matrix identity in the target, and that the collapse matrix
/// intertwines the two representations on sampled words.
pub fn verify_gen_map(
    map: &GenMap,
    source_config: &CurveConfiguration,
    target_config: &CurveConfiguration,
    sample_words: usize,
    max_len: usize,
) -> OracleReport {
    let mut entries = Vec::new();
    let pres = presentation(map.source(), source_config, true);
    for eq in &pres.relations {
        let lhs = evaluate(target_config, &apply_gen_map(map, &eq.lhs));
        let rhs = evaluate(target_config, &apply_gen_map(map, &eq.rhs));
        entries.push(ReportEntry {
            name: format!("image of {}", eq.name),
            pass: lhs == rhs,
        });
    }
    let p = collapse_matrix(map.source());
    let mut sampler = WordSampler::new(0x5deece66d, map.source());
    for i in 0..sample_words {
        let w = sampler.word(max_len);
        let lhs = mat_mul(&p, &twist_to_matrix(&evaluate(source_config, &w)));
        let rhs = mat_mul(
            &twist_to_matrix(&evaluate(target_config, &apply_gen_map(map, &w))),
            &p,
        );
        entries.push(ReportEntry {
            name: format!("commuting square sample {i}"),
            pass: lhs == rhs,
        });
    }
    OracleReport::from_checks(entries)
}

/// Kernel generators of the capping map.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KernelFamily {
    /// `x_0 .. x_{2g+n-3}`, each freely reduced.
    pub x: Vec<Word>,
    /// The capped boundary twist `c_{N,1}`.
    pub d_n: Word,
}

/// The spin-map family `x_0 = a_1 a_N^{-1}`, `x_1 = b(x_0)`, and its
/// conjugates along the chain; for genus one only the leg conjugates
/// occur.
pub fn kernel_generators(sig: &SurfaceSignature) -> Result<KernelFamily, MorphismError> {
    if sig.boundary_count() == 0 || sig.legs() < 2 {
        return Err(MorphismError::DegenerateTarget(*sig));
    }
    let n = sig.legs();
    let g = sig.genus();
    let x0 = Word::concat(&[&Word::gen(CurveId::Ai(1)), &Word::gen_inv(CurveId::Ai(n))]);
    let x1 = conjugate(&Word::gen(CurveId::B), &x0);
    let mut xs = vec![x0, x1.clone()];
    if g >= 2 {
        let x2 = conjugate(&Word::gen(CurveId::Ai(2)), &x1);
        let x3 = conjugate(&Word::gen(CurveId::Bi(1)), &x2);
        xs.push(x2);
        xs.push(x3);
        for i in 2..g {
            let x_even = conjugate(&Word::gen(CurveId::Cij(2 * i - 2, 2 * i)), xs.last().unwrap());
            let x_odd = conjugate(&Word::gen(CurveId::Bi(i)), &x_even);
            xs.push(x_even);
            xs.push(x_odd);
        }
    }
    for k in 2 * g..=(2 * g + sig.boundary_count()).saturating_sub(3) {
        xs.push(conjugate(&Word::gen(CurveId::Ai(k)), &x1));
    }
    debug_assert_eq!(xs.len() as u32, 2 * g + sig.boundary_count() - 2);
    Ok(KernelFamily {
        x: xs,
        d_n: Word::gen(CurveId::Cij(n, 1)),
    })
}

/// The two extra relators of the minimal twist presentation, written
/// over the full generator family. The first appears for genus two, the
/// second for genus three.
pub fn wajnryb_relators(sig: &SurfaceSignature) -> Vec<Equation> {
    let mut out = Vec::new();
    let g = sig.genus();
    if g < 2 {
        return out;
    }
    let w = |s: &str| -> Word { s.parse().unwrap() };
    let c12 = Word::gen(CurveId::Cij(1, 2));

    // (a1 b a2)^4 = c1_2 * theta, theta = (b1 a2 b a1 a1 b a2 b1)(c1_2)
    let theta = conjugate(&w("b1 a2 b a1 a1 b a2 b1"), &c12);
    out.push(Equation::new(
        "W_II",
        RelationKind::Derived,
        w("a1 b a2").pow(4),
        Word::concat(&[&c12, &theta]),
    ));

    if g >= 3 {
        // a2 a1 phi c2_4 = l m c1_2 with
        //   m = (b1' a2' c2_4' b1')(c1_2),      l = (b' a1' a2' b')(m),
        //   phi = b2 c2_4 b1 a2 b s(omega),     s = (c2_4' b2')(m),
        //   omega = (a1' b' a2' b1')(c1_2),
        // stated over t1 = b a1 a2 b, t2 = b1 a2 c2_4 b1 on the right.
        let m = conjugate(&w("b1' a2' c2_4' b1'"), &c12);
        let t1 = w("b a1 a2 b");
        let t2 = w("b1 a2 c2_4 b1");
        let s = conjugate(&w("c2_4' b2'"), &m);
        let omega = conjugate(&w("a1' b' a2' b1'"), &c12);
        let phi = Word::concat(&[&w("b2 c2_4 b1 a2 b"), &conjugate(&s, &omega)]);
        let lhs = Word::concat(&[&w("a2 a1"), &phi, &Word::gen(CurveId::Cij(2, 4))]);
        let t1i = t1.inverse();
        let t2i = t2.inverse();
        let rhs = Word::concat(&[&t1i, &t2i, &c12, &t2, &t1, &t2i, &c12, &t2, &c12]);
        out.push(Equation::new("W_III", RelationKind::Derived, lhs, rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::check_equation;

    fn sig(g: i64, n: i64) -> SurfaceSignature {
        make_signature(g, n).unwrap()
    }

    #[test]
    fn g2_table_examples() {
        // (2,2): N = 4
        let map = g2_generator_map(&sig(2, 2)).unwrap();
        assert_eq!(
            map.image(CurveId::Cij(4, 2)).unwrap(),
            &Word::gen(CurveId::Cij(1, 2))
        );
        assert_eq!(
            map.image(CurveId::Cij(1, 4)).unwrap().to_string(),
            "a1 b a1 a1 b a1 a1 b a1 a1 b a1"
        );
        assert!(map.image(CurveId::Cij(4, 1)).unwrap().is_empty());
        assert_eq!(
            g2_generator_map(&sig(1, 1)),
            Err(MorphismError::DegenerateTarget(sig(1, 1)))
        );
    }

    #[test]
    fn apply_examples() {
        let s = sig(2, 2);
        let map = g2_generator_map(&s).unwrap();
        let dn = Word::gen(CurveId::Cij(4, 1));
        assert!(apply_gen_map(&map, &dn).is_empty());
        let x0: Word = "a1 a4'".parse().unwrap();
        assert!(apply_gen_map(&map, &x0).is_empty());
        assert!(apply_gen_map(&map, &Word::empty()).is_empty());
    }

    #[test]
    fn collapse_matrix_shape() {
        let s = sig(2, 2);
        let p = collapse_matrix(&s);
        assert_eq!(p.len(), 4); // target (2,1) has rank 4
        assert_eq!(p[0].len(), 5); // source (2,2) has rank 5
        // the capped boundary class (last basis vector) dies
        for row in &p {
            assert!(row[4].is_zero());
        }
        // n = 1 collapses onto the closed-surface lattice of equal rank
        let p = collapse_matrix(&sig(2, 1));
        assert_eq!((p.len(), p[0].len()), (4, 4));
    }

    #[test]
    fn kernel_family_examples() {
        let s = sig(2, 2); // N = 4
        let fam = kernel_generators(&s).unwrap();
        assert_eq!(fam.x.len(), 4); // 2g+n-2
        assert_eq!(fam.x[0].to_string(), "a1 a4'");
        assert_eq!(fam.x[1].to_string(), "b a1 a4' b'");
        assert_eq!(fam.d_n.to_string(), "c4_1");

        // g = 1: the family is x0, x1, a2(x1), .., a_{n-1}(x1)
        let s = sig(1, 3); // N = 3
        let fam = kernel_generators(&s).unwrap();
        assert_eq!(fam.x.len() as u32, 2 * s.genus() + s.boundary_count() - 2);
        assert_eq!(fam.x.len(), 3);
        assert_eq!(
            fam.x[2],
            conjugate(&Word::gen(CurveId::Ai(2)), &fam.x[1])
        );
    }

    #[test]
    fn wajnryb_relator_counts() {
        assert!(wajnryb_relators(&sig(1, 1)).is_empty());
        let r2 = wajnryb_relators(&sig(2, 0));
        assert_eq!(r2.len(), 1);
        assert_eq!(r2[0].name, "W_II");
        let r3 = wajnryb_relators(&sig(3, 0));
        assert_eq!(r3.len(), 2);
    }

    #[test]
    fn wajnryb_relators_pass_oracle() {
        for (g, n) in [(2, 0), (2, 1), (3, 0), (3, 1)] {
            let s = sig(g, n);
            let config = CurveConfiguration::for_signature(&s);
            for eq in wajnryb_relators(&s) {
                assert!(check_equation(&config, &eq), "{} fails at {s}", eq.name);
            }
        }
    }

    #[test]
    fn gen_map_verifies_at_2_2() {
        let s = sig(2, 2);
        let map = g2_generator_map(&s).unwrap();
        let src = CurveConfiguration::for_signature(&s);
        let tgt = CurveConfiguration::for_signature(map.target());
        let report = verify_gen_map(&map, &src, &tgt, 30, 12);
        assert!(report.pass, "failures: {:?}", report.failures());
    }

    #[test]
    fn corrupted_image_fails_star_relation() {
        let s = sig(2, 2);
        let mut map = g2_generator_map(&s).unwrap();
        map.set_image(CurveId::Cij(1, 4), Word::empty());
        let src = CurveConfiguration::for_signature(&s);
        let tgt = CurveConfiguration::for_signature(map.target());
        let report = verify_gen_map(&map, &src, &tgt, 0, 0);
        let failing: Vec<&str> = report.failures();
        assert!(failing.iter().any(|n| n.contains("E_1_1_4")));
    }

    #[test]
    fn gen_map_json_round_trip() {
        let map = g2_generator_map(&sig(2, 2)).unwrap();
        let back = GenMap::from_json(&map.to_json()).unwrap();
        assert_eq!(map, back);
    }
}
