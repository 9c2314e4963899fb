use std::collections::VecDeque;
use std::fmt;

use super::{PolygonalGroupData, SurfaceError};
use crate::exactmath::{smith_normal_form, IntegerMatrix, SmithForm};
use crate::perm::{PermGroup, Permutation};

/// A word in numbered generators: letter `g + 1` is generator `g`, letter
/// `-(g + 1)` its inverse.
pub type Word = Vec<i32>;

fn letter(g: usize, inverse: bool) -> i32 {
    let l = g as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Presentation of `H = Φ⁻¹(Δ_G)` inside `T_r × T_s`, where
/// `Φ = Φ_r × Φ_s: T_r × T_s → G × G`.
///
/// Cosets of `H` are identified with `G` through
/// `(u, v) ↦ Φ_r(u)⁻¹ Φ_s(v)`, so an `x`-generator acts by
/// `g ↦ Φ_r(x)⁻¹ g` and a `y`-generator by `g ↦ g Φ_s(y)`. Cosets are
/// numbered by position in the sorted element list of `G`.
#[derive(Clone, Debug)]
pub struct FiberProductPresentation {
    original_names: Vec<String>,
    cosets: usize,
    /// `action[c][j]`: coset reached from `c` along original generator `j`.
    action: Vec<Vec<usize>>,
    /// Transversal word (original generators) for each coset.
    transversal: Vec<Word>,
    /// Schreier generator number for each `(coset, generator)` pair, or
    /// `None` on tree edges.
    schreier_index: Vec<Vec<Option<usize>>>,
    schreier: Vec<(usize, usize)>,
    original_relators: Vec<Word>,
    /// Rewritten relators in Schreier generators, with the coset and
    /// original relator they came from.
    relators: Vec<(usize, usize, Word)>,
}

/// Relators of `T_r × T_s` over generators `x_1..x_{n−1}, y_1..y_{m−1}`:
/// the power relators of each factor and all commutators `[x_i, y_j]`.
fn product_relators(t1: &PolygonalGroupData, t2: &PolygonalGroupData) -> Vec<Word> {
    let a = t1.generator_count();
    let b = t2.generator_count();
    let mut rels = Vec::new();
    for (t, offset) in [(t1, 0), (t2, a)] {
        for (i, &r) in t.orders()[..t.generator_count()].iter().enumerate() {
            rels.push(vec![letter(offset + i, false); r as usize]);
        }
        let long: Word = (0..t.generator_count()).map(|i| letter(offset + i, false)).collect();
        let r = *t.orders().last().unwrap() as usize;
        rels.push(long.repeat(r));
    }
    for i in 0..a {
        for j in 0..b {
            rels.push(vec![letter(i, false), letter(a + j, false), letter(i, true), letter(a + j, true)]);
        }
    }
    rels
}

fn check_images(group: &PermGroup, t: &PolygonalGroupData, images: &[Permutation]) -> Result<(), SurfaceError> {
    if images.len() != t.generator_count() {
        return Err(SurfaceError::TypeMismatch(format!(
            "{} images for {} generators",
            images.len(),
            t.generator_count()
        )));
    }
    if !images.iter().all(|p| group.contains(p)) {
        return Err(SurfaceError::TypeMismatch("image outside the group".into()));
    }
    for (p, &r) in images.iter().zip(t.orders()) {
        if !p.pow(r as i64).is_identity() {
            return Err(SurfaceError::TypeMismatch(format!("{p} does not satisfy x^{r} = 1")));
        }
    }
    let prod = images.iter().fold(group.identity(), |acc, p| acc.then(p));
    let r = *t.orders().last().unwrap();
    if !prod.pow(r as i64).is_identity() {
        return Err(SurfaceError::TypeMismatch("long relator not satisfied".into()));
    }
    let generated = if images.is_empty() { 1 } else { crate::perm::generate(images)?.order() };
    if generated != group.order() {
        return Err(SurfaceError::TypeMismatch("images do not generate the group".into()));
    }
    Ok(())
}

/// Reidemeister–Schreier presentation from explicit generator images
/// `Φ_r(x_i)` and `Φ_s(y_j)`. Works for the trivial group as well.
pub fn presentation_from_images(
    group: &PermGroup,
    t1: &PolygonalGroupData,
    images1: &[Permutation],
    t2: &PolygonalGroupData,
    images2: &[Permutation],
) -> Result<FiberProductPresentation, SurfaceError> {
    check_images(group, t1, images1)?;
    check_images(group, t2, images2)?;
    let elems = group.elements();
    let n = elems.len();
    let gens = images1.len() + images2.len();
    let idx = |p: &Permutation| group.index_of(p).expect("closed under products");

    let x_inv: Vec<Permutation> = images1.iter().map(Permutation::inverse).collect();
    let action: Vec<Vec<usize>> = elems
        .iter()
        .map(|g| {
            let mut row: Vec<usize> = x_inv.iter().map(|xi| idx(&xi.then(g))).collect();
            row.extend(images2.iter().map(|y| idx(&g.then(y))));
            row
        })
        .collect();

    let root = idx(&group.identity());
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![vec![false; gens]; n];
    transversal[root] = Some(Vec::new());
    let mut queue = VecDeque::from([root]);
    while let Some(c) = queue.pop_front() {
        for j in 0..gens {
            let d = action[c][j];
            if transversal[d].is_none() {
                let mut w = transversal[c].clone().unwrap();
                w.push(letter(j, false));
                transversal[d] = Some(w);
                tree[c][j] = true;
                queue.push_back(d);
            }
        }
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|w| w.expect("action is transitive")).collect();

    let mut schreier = Vec::new();
    let mut schreier_index = vec![vec![None; gens]; n];
    for c in 0..n {
        for j in 0..gens {
            if !tree[c][j] {
                schreier_index[c][j] = Some(schreier.len());
                schreier.push((c, j));
            }
        }
    }

    let mut inverse_action = vec![vec![0usize; gens]; n];
    for c in 0..n {
        for j in 0..gens {
            inverse_action[action[c][j]][j] = c;
        }
    }

    let original_relators = product_relators(t1, t2);
    let mut relators = Vec::with_capacity(n * original_relators.len());
    for (ri, rel) in original_relators.iter().enumerate() {
        for start in 0..n {
            let mut cur = start;
            let mut word = Vec::new();
            for &l in rel {
                let j = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    if let Some(s) = schreier_index[cur][j] {
                        word.push(letter(s, false));
                    }
                    cur = action[cur][j];
                } else {
                    cur = inverse_action[cur][j];
                    if let Some(s) = schreier_index[cur][j] {
                        word.push(letter(s, true));
                    }
                }
            }
            debug_assert_eq!(cur, start, "relator must lie in every coset's stabilizer");
            relators.push((start, ri, free_reduce(&word)));
        }
    }

    let mut original_names: Vec<String> = (1..=images1.len()).map(|i| format!("x{i}")).collect();
    original_names.extend((1..=images2.len()).map(|j| format!("y{j}")));
    Ok(FiberProductPresentation {
        original_names,
        cosets: n,
        action,
        transversal,
        schreier_index,
        schreier,
        original_relators,
        relators,
    })
}

impl FiberProductPresentation {
    pub fn coset_count(&self) -> usize {
        self.cosets
    }

    pub fn original_generator_count(&self) -> usize {
        self.original_names.len()
    }

    pub fn generator_count(&self) -> usize {
        self.schreier.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn original_relators(&self) -> &[Word] {
        &self.original_relators
    }

    /// Rewritten relators as `(coset, original relator index, word)`.
    pub fn relators(&self) -> &[(usize, usize, Word)] {
        &self.relators
    }

    pub fn transversal(&self, coset: usize) -> &[i32] {
        &self.transversal[coset]
    }

    /// Schreier generator `s` as the word `t_c · g_j · t_{c·g_j}⁻¹` in the
    /// original generators.
    pub fn schreier_word(&self, s: usize) -> Word {
        let (c, j) = self.schreier[s];
        let mut w = self.transversal[c].clone();
        w.push(letter(j, false));
        w.extend(invert_word(&self.transversal[self.action[c][j]]));
        w
    }

    /// Image of a word in Schreier generators under the inclusion
    /// `H → T_r × T_s`, freely reduced.
    pub fn expand(&self, w: &[i32]) -> Word {
        let mut out = Vec::new();
        for &l in w {
            let s = (l.unsigned_abs() - 1) as usize;
            let piece = self.schreier_word(s);
            if l > 0 {
                out.extend(piece);
            } else {
                out.extend(invert_word(&piece));
            }
        }
        free_reduce(&out)
    }

    pub fn is_tree_edge(&self, coset: usize, generator: usize) -> bool {
        self.schreier_index[coset][generator].is_none()
    }

    fn schreier_name(&self, s: usize) -> String {
        let (c, j) = self.schreier[s];
        format!("{}_{}", self.original_names[j], c)
    }

    /// Exponent-sum matrix: one row per rewritten relator, one column per
    /// Schreier generator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::new(0, self.generator_count());
        for (_, _, w) in &self.relators {
            let row: Vec<(usize, i64)> =
                w.iter().map(|&l| ((l.unsigned_abs() - 1) as usize, if l > 0 { 1 } else { -1 })).collect();
            m.push_row(&row);
        }
        m
    }
}

/// Invariant factors and free rank of `H^ab`.
pub fn abelianization(p: &FiberProductPresentation) -> SmithForm {
    smith_normal_form(&p.relation_matrix())
}

impl fmt::Display for FiberProductPresentation {
    /// `< gens | rels >` with generators named `x1_c`, `y2_c` after the
    /// original generator and coset. Relators that rewrite to the empty
    /// word are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.generator_count()).map(|s| self.schreier_name(s)).collect();
        let word = |w: &[i32]| {
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let mut k = 1;
                while i + k < w.len() && w[i + k] == w[i] {
                    k += 1;
                }
                let name = &names[(w[i].unsigned_abs() - 1) as usize];
                let e = if w[i] > 0 { k as i64 } else { -(k as i64) };
                parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
                i += k;
            }
            parts.join("*")
        };
        let rels: Vec<String> =
            self.relators.iter().filter(|(_, _, w)| !w.is_empty()).map(|(_, _, w)| word(w)).collect();
        write!(f, "< {} | {} >", names.join(", "), rels.join(", "))
    }
}
