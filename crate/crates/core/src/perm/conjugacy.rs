use super::{PermError, PermGroup, Permutation};

/// Depth-first search for permutations `c` with `c⁻¹ a_i c = b_i` for all
/// `i`, written as the point condition `c(a_i(x)) = b_i(c(x))`.
///
/// Free points are decided in increasing order with images tried in
/// increasing order; every other point is forced by propagation. Hence
/// solutions come out in lexicographic order of their image arrays.
struct Search<'a> {
    a: &'a [Permutation],
    b: &'a [Permutation],
    /// Cycle length of each point under each `a_i` and `b_i`.
    a_len: Vec<Vec<usize>>,
    b_len: Vec<Vec<usize>>,
    n: usize,
}

impl<'a> Search<'a> {
    fn new(a: &'a [Permutation], b: &'a [Permutation]) -> Self {
        let lens = |p: &Permutation| {
            let mut out = vec![0; p.degree()];
            for c in p.cycles() {
                for &x in &c {
                    out[x] = c.len();
                }
            }
            out
        };
        let n = a.first().map_or(0, Permutation::degree);
        Search { a, b, a_len: a.iter().map(lens).collect(), b_len: b.iter().map(lens).collect(), n }
    }

    /// Sets `c(x) = y` and everything it forces. Returns false on conflict,
    /// leaving partial assignments recorded in `trail` for undo.
    fn assign(&self, x: usize, y: usize, img: &mut [Option<usize>], used: &mut [bool], trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match img[x] {
                Some(v) if v == y => continue,
                Some(_) => return false,
                None => {}
            }
            if used[y] {
                return false;
            }
            for i in 0..self.a.len() {
                if self.a_len[i][x] != self.b_len[i][y] {
                    return false;
                }
            }
            img[x] = Some(y);
            used[y] = true;
            trail.push(x);
            for i in 0..self.a.len() {
                queue.push((self.a[i].apply(x), self.b[i].apply(y)));
            }
        }
        true
    }

    fn undo(img: &mut [Option<usize>], used: &mut [bool], trail: &mut Vec<usize>, mark: usize) {
        while trail.len() > mark {
            let x = trail.pop().unwrap();
            used[img[x].unwrap()] = false;
            img[x] = None;
        }
    }

    /// Calls `visit` on every solution; stops early when it returns false.
    fn run(&self, visit: &mut dyn FnMut(Permutation) -> bool) {
        let mut img = vec![None; self.n];
        let mut used = vec![false; self.n];
        let mut trail = Vec::new();
        self.rec(&mut img, &mut used, &mut trail, visit);
    }

    fn rec(
        &self,
        img: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        trail: &mut Vec<usize>,
        visit: &mut dyn FnMut(Permutation) -> bool,
    ) -> bool {
        let Some(x) = img.iter().position(Option::is_none) else {
            let images = img.iter().map(|v| v.unwrap() as u32).collect();
            return visit(Permutation::from_images_unchecked(images));
        };
        for y in 0..self.n {
            if used[y] {
                continue;
            }
            let mark = trail.len();
            if self.assign(x, y, img, used, trail) && !self.rec(img, used, trail, visit) {
                Self::undo(img, used, trail, mark);
                return false;
            }
            Self::undo(img, used, trail, mark);
        }
        true
    }
}

fn check_shapes(a: &[Permutation], b: &[Permutation]) -> Result<(), PermError> {
    if a.len() != b.len() {
        return Err(PermError::LengthMismatch(a.len(), b.len()));
    }
    if let Some(first) = a.first() {
        let n = first.degree();
        for p in a.iter().chain(b) {
            if p.degree() != n {
                return Err(PermError::DegreeMismatch(n, p.degree()));
            }
        }
    }
    Ok(())
}

fn types_match(a: &[Permutation], b: &[Permutation]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.cycle_type() == y.cycle_type())
}

/// The lexicographically least `c` (optionally restricted to `ambient`)
/// with `c⁻¹ a_i c = b_i` for every `i`, or `None`.
pub fn simultaneous_conjugator(
    a: &[Permutation],
    b: &[Permutation],
    ambient: Option<&PermGroup>,
) -> Result<Option<Permutation>, PermError> {
    check_shapes(a, b)?;
    if a.is_empty() {
        return Ok(ambient.map(PermGroup::identity));
    }
    if !types_match(a, b) {
        return Ok(None);
    }
    let mut found = None;
    Search::new(a, b).run(&mut |c| {
        if ambient.is_none_or(|g| g.contains(&c)) {
            found = Some(c);
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// Every conjugator from `a` to `b`, in lexicographic order.
pub fn all_conjugators(
    a: &[Permutation],
    b: &[Permutation],
    ambient: Option<&PermGroup>,
) -> Result<Vec<Permutation>, PermError> {
    check_shapes(a, b)?;
    let mut out = Vec::new();
    if a.is_empty() || !types_match(a, b) {
        return Ok(out);
    }
    Search::new(a, b).run(&mut |c| {
        if ambient.is_none_or(|g| g.contains(&c)) {
            out.push(c);
        }
        true
    });
    Ok(out)
}

/// Simultaneous centralizer of a tuple, sorted.
pub fn centralizer(a: &[Permutation], ambient: Option<&PermGroup>) -> Result<Vec<Permutation>, PermError> {
    all_conjugators(a, a, ambient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn conjugator_examples() {
        let a = [p("(1,2)(3,4)", 7), p("(1,5,7)(2,3)(4,6)", 7)];
        let c = simultaneous_conjugator(&a, &a, None).unwrap().unwrap();
        assert!(c.is_identity());

        let c = simultaneous_conjugator(&[p("(1,2)", 3)], &[p("(1,3)", 3)], None).unwrap().unwrap();
        assert_eq!(c, p("(2,3)", 3));

        let none = simultaneous_conjugator(&[p("(1,2)", 3)], &[p("(1,2,3)", 3)], None).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn results_conjugate() {
        let a = [p("(1,2,3)", 5), p("(3,4,5)", 5)];
        let b: Vec<Permutation> = a.iter().map(|x| x.conjugate_by(&p("(1,5,2)(3,4)", 5))).collect();
        let c = simultaneous_conjugator(&a, &b, None).unwrap().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(&x.conjugate_by(&c), y);
        }
    }

    #[test]
    fn centralizers() {
        // the centralizer of a transposition in S4 has order 4
        assert_eq!(centralizer(&[p("(1,2)", 4)], None).unwrap().len(), 4);
        let a4 = PermGroup::alternating(4);
        assert_eq!(centralizer(&[p("(1,2)(3,4)", 4)], Some(&a4)).unwrap().len(), 4);
        let s4 = PermGroup::symmetric(4);
        let z = centralizer(&[p("(1,2,3,4)", 4)], Some(&s4)).unwrap();
        assert!(s4.is_subgroup(&z));
        assert_eq!(z.len(), 4);
    }

    #[test]
    fn ambient_restriction() {
        let a4 = PermGroup::alternating(4);
        // (1,2,3) and (1,3,2) are conjugate in S4 only
        let x = [p("(1,2,3)", 4)];
        let y = [p("(1,3,2)", 4)];
        assert!(simultaneous_conjugator(&x, &y, None).unwrap().is_some());
        assert!(simultaneous_conjugator(&x, &y, Some(&a4)).unwrap().is_none());
    }

    #[test]
    fn shape_errors() {
        assert!(simultaneous_conjugator(&[p("(1,2)", 3)], &[], None).is_err());
        assert!(simultaneous_conjugator(&[p("(1,2)", 3)], &[p("(1,2)", 4)], None).is_err());
    }
}
