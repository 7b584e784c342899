//! Isomorphism search between finite effect algebras by backtracking label
//! matching.

use crate::algebra::{ElementId, FiniteEffectAlgebra};

/// Cheap isomorphism invariants of an element.
fn signature(alg: &FiniteEffectAlgebra, p: ElementId) -> (usize, usize, usize, usize) {
    let partners = alg.elements().filter(|&q| alg.orthogonal(p, q)).count();
    let below = alg.elements().filter(|&q| alg.leq(q, p)).count();
    let above = alg.elements().filter(|&q| alg.leq(p, q)).count();
    let iota = alg.isotropic_index(p).unwrap_or(0);
    (partners, below, above, iota)
}

/// Returns `f` with `f[p] = image of p` if the two partial tables are
/// isomorphic, trying candidate images in ascending index order.
pub fn find_isomorphism(a: &FiniteEffectAlgebra, b: &FiniteEffectAlgebra) -> Option<Vec<ElementId>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let sig_a: Vec<_> = a.elements().map(|p| signature(a, p)).collect();
    let sig_b: Vec<_> = b.elements().map(|p| signature(b, p)).collect();
    {
        let (mut sa, mut sb) = (sig_a.clone(), sig_b.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }

    let mut image: Vec<Option<ElementId>> = vec![None; n];
    let mut used = vec![false; n];
    image[a.zero().index()] = Some(b.zero());
    used[b.zero().index()] = true;
    image[a.unit().index()] = Some(b.unit());
    used[b.unit().index()] = true;
    let order: Vec<ElementId> = a
        .elements()
        .filter(|&p| p != a.zero() && p != a.unit())
        .collect();

    fn consistent(
        a: &FiniteEffectAlgebra,
        b: &FiniteEffectAlgebra,
        image: &[Option<ElementId>],
        p: ElementId,
    ) -> bool {
        let fp = image[p.index()].expect("assigned");
        for q in a.elements() {
            let Some(fq) = image[q.index()] else { continue };
            match (a.sum(p, q), b.sum(fp, fq)) {
                (None, None) => {}
                (Some(s), Some(t)) => {
                    if let Some(fs) = image[s.index()] {
                        if fs != t {
                            return false;
                        }
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn extend(
        a: &FiniteEffectAlgebra,
        b: &FiniteEffectAlgebra,
        sig_a: &[(usize, usize, usize, usize)],
        sig_b: &[(usize, usize, usize, usize)],
        order: &[ElementId],
        image: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some((&p, rest)) = order.split_first() else {
            // every pair has been checked, but sums landing on elements
            // assigned later are re-checked here
            return a.elements().all(|x| {
                a.elements().all(|y| {
                    let fx = image[x.index()].expect("total");
                    let fy = image[y.index()].expect("total");
                    a.sum(x, y).map(|s| image[s.index()].expect("total")) == b.sum(fx, fy)
                })
            });
        };
        for candidate in b.elements() {
            if used[candidate.index()] || sig_a[p.index()] != sig_b[candidate.index()] {
                continue;
            }
            image[p.index()] = Some(candidate);
            used[candidate.index()] = true;
            if consistent(a, b, image, p) && extend(a, b, sig_a, sig_b, rest, image, used) {
                return true;
            }
            image[p.index()] = None;
            used[candidate.index()] = false;
        }
        false
    }

    if !consistent(a, b, &image, a.zero()) || !consistent(a, b, &image, a.unit()) {
        return None;
    }
    if extend(a, b, &sig_a, &sig_b, &order, &mut image, &mut used) {
        Some(image.into_iter().map(|x| x.expect("total")).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_powerset, chain, mo, product};

    #[test]
    fn permuted_algebra_is_isomorphic() {
        let alg = product(&[chain(2).unwrap(), boolean_powerset(1).unwrap()]).unwrap();
        let perm: Vec<usize> = (0..alg.size()).rev().collect();
        let shuffled = alg.permuted(&perm).unwrap();
        let f = find_isomorphism(&alg, &shuffled).unwrap();
        for x in alg.elements() {
            assert_eq!(alg.label(x), shuffled.label(f[x.index()]));
        }
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert!(find_isomorphism(&chain(3).unwrap(), &boolean_powerset(2).unwrap()).is_none());
        assert!(find_isomorphism(&mo(2).unwrap(), &product(&[chain(1).unwrap(), chain(2).unwrap()]).unwrap()).is_none());
        assert!(find_isomorphism(&chain(2).unwrap(), &chain(3).unwrap()).is_none());
    }
}
