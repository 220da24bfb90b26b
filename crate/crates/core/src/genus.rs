//! Genera of positive-definite even binary lattices.

use std::collections::HashSet;

use crate::discform::{
    check_guard, disc_form_of, forms_isometric, induced_map, local_symbols, LocalSymbol,
    SymbolKind,
};
use crate::error::Result;
use crate::qform::{
    enumerate_isometry_classes, isometry_group, reduce, reduced_form_is_ambiguous,
    EvenBinaryLattice,
};

/// The genus of a lattice, one reduced representative per isometry class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusReport {
    pub members: Vec<EvenBinaryLattice>,
    pub ambiguous: Vec<bool>,
    pub g_count: u64,
    pub proper_count: u64,
    pub image_orders: Vec<u64>,
}

impl GenusReport {
    /// Members together with their ambiguity flag and image order.
    pub fn iter(&self) -> impl Iterator<Item = (&EvenBinaryLattice, bool, u64)> + '_ {
        self.members
            .iter()
            .zip(&self.ambiguous)
            .zip(&self.image_orders)
            .map(|((m, &amb), &img)| (m, amb, img))
    }
}

fn fingerprint(lattice: &EvenBinaryLattice) -> Result<Vec<(u64, u32, u32, SymbolKind)>> {
    Ok(local_symbols(lattice)?.iter().map(LocalSymbol::fingerprint).collect())
}

/// Enumerates the genus of `t`.
pub fn genus_of(t: &EvenBinaryLattice, guard: u64) -> Result<GenusReport> {
    check_guard(t.det() as u64, guard)?;
    let target = disc_form_of(t)?;
    let print = fingerprint(t)?;
    let mut members = Vec::new();
    for m in enumerate_isometry_classes(t.det(), false) {
        if fingerprint(&m)? != print {
            continue;
        }
        if forms_isometric(&disc_form_of(&m)?, &target, guard)? {
            members.push(m);
        }
    }
    let ambiguous: Vec<bool> = members.iter().map(reduced_form_is_ambiguous).collect();
    let image_orders = members.iter().map(image_order).collect::<Result<Vec<_>>>()?;
    let n_amb = ambiguous.iter().filter(|&&a| a).count() as u64;
    let g_count = members.len() as u64;
    Ok(GenusReport {
        proper_count: n_amb + 2 * (g_count - n_amb),
        members,
        ambiguous,
        g_count,
        image_orders,
    })
}

/// Order of the image of `O(T)` in `O(D_T)`.
pub fn image_order(t: &EvenBinaryLattice) -> Result<u64> {
    let mut seen = HashSet::new();
    for g in isometry_group(t) {
        seen.insert(induced_map(t, &g)?);
    }
    Ok(seen.len() as u64)
}

/// `|G̃(T)|`: ambiguous classes once, the others twice.
pub fn proper_genus_count(t: &EvenBinaryLattice, guard: u64) -> Result<u64> {
    Ok(genus_of(t, guard)?.proper_count)
}

/// The reduced representative of the class of `t` with `b >= 0`.
pub fn class_representative(t: &EvenBinaryLattice) -> EvenBinaryLattice {
    let r = reduce(t).form;
    if r.b() < 0 {
        r.mirror()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discform::DEFAULT_GUARD;

    fn l(a: i64, b: i64, c: i64) -> EvenBinaryLattice {
        EvenBinaryLattice::new(a, b, c).unwrap()
    }

    #[test]
    fn genus_examples() {
        let g = genus_of(&l(1, 1, 4), DEFAULT_GUARD).unwrap();
        assert_eq!(g.members, vec![l(1, 1, 4)]);
        assert_eq!(g.proper_count, 1);
        let g = genus_of(&l(2, 1, 2), DEFAULT_GUARD).unwrap();
        assert_eq!(g.members, vec![l(2, 1, 2)]);
        assert_eq!(g.proper_count, 1);
        assert_eq!(genus_of(&l(1, 0, 5), DEFAULT_GUARD).unwrap().members, vec![l(1, 0, 5)]);
        assert_eq!(genus_of(&l(2, 2, 3), DEFAULT_GUARD).unwrap().members, vec![l(2, 2, 3)]);
        // non-reduced input lands on its reduced class
        assert_eq!(genus_of(&l(2, 5, 5), DEFAULT_GUARD).unwrap().members, vec![l(2, 1, 2)]);
    }

    #[test]
    fn proper_genus_examples() {
        assert_eq!(proper_genus_count(&l(1, 1, 4), DEFAULT_GUARD), Ok(1));
        assert_eq!(proper_genus_count(&l(1, 1, 1), DEFAULT_GUARD), Ok(1));
        // det 59 has classes (1,1,15), (3,1,5) in one genus; (3,1,5) counts twice
        let g = genus_of(&l(3, 1, 5), DEFAULT_GUARD).unwrap();
        assert_eq!(g.members, vec![l(1, 1, 15), l(3, 1, 5)]);
        assert_eq!(g.ambiguous, vec![true, false]);
        assert_eq!(g.proper_count, 3);
    }

    #[test]
    fn image_order_examples() {
        assert_eq!(image_order(&l(1, 1, 4)), Ok(2));
        assert_eq!(image_order(&l(2, 1, 2)), Ok(4));
        assert_eq!(image_order(&l(1, 0, 1)), Ok(2));
    }

    #[test]
    fn guard_is_enforced() {
        assert!(genus_of(&l(50, 0, 50), DEFAULT_GUARD).is_err());
    }

    #[test]
    fn class_representative_has_nonnegative_b() {
        assert_eq!(class_representative(&l(3, -1, 5)), l(3, 1, 5));
        assert_eq!(class_representative(&l(5, 9, 7)), class_representative(&l(5, -9, 7)));
    }
}
