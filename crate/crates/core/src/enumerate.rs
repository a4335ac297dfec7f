//! Finite families of multi-quadratic fields used by sweeps and batch tables.

use std::collections::HashSet;

use crate::arith::is_prime;
use crate::field::{MultiQuadField, SquareClass};

/// `-1` together with `q` and `-q` for every prime `q < bound`, in that order.
pub fn signed_prime_atoms(bound: u64) -> Vec<SquareClass> {
    let mut atoms = Vec::new();
    if bound > 2 {
        atoms.push(SquareClass::minus_one());
    }
    for q in (2..bound).filter(|&q| is_prime(q)) {
        let c = if q == 2 {
            SquareClass::two()
        } else {
            SquareClass::odd_prime(q)
        };
        atoms.push(c.clone());
        atoms.push(c.negate());
    }
    atoms
}

/// Every distinct field generated by at most `max_rank` atoms of
/// [`signed_prime_atoms`], excluding `Q`, sorted by rank and then by the
/// canonical radicands.
pub fn fields_from_atoms(bound: u64, max_rank: usize) -> Vec<MultiQuadField> {
    let atoms = signed_prime_atoms(bound);
    let mut seen = HashSet::new();
    let mut chosen = Vec::with_capacity(max_rank);
    collect(&atoms, 0, max_rank, &mut chosen, &mut seen);
    let mut keyed: Vec<_> = seen
        .into_iter()
        .map(|f| ((f.rank(), f.radicands().unwrap_or_default()), f))
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, f)| f).collect()
}

fn collect(
    atoms: &[SquareClass],
    start: usize,
    left: usize,
    chosen: &mut Vec<SquareClass>,
    seen: &mut HashSet<MultiQuadField>,
) {
    if !chosen.is_empty() {
        seen.insert(MultiQuadField::from_classes(chosen.iter().cloned()));
    }
    if left == 0 {
        return;
    }
    for i in start..atoms.len() {
        chosen.push(atoms[i].clone());
        collect(atoms, i + 1, left - 1, chosen, seen);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert!(signed_prime_atoms(0).is_empty());
        assert_eq!(signed_prime_atoms(3).len(), 3);
        // Q(sqrt(-1)), Q(sqrt(2)), Q(sqrt(-2)) and Q(sqrt(2), sqrt(-1))
        let fields = fields_from_atoms(3, 2);
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[3].rank(), 2);
        assert!(fields_from_atoms(0, 2).is_empty());
    }
}
