//! Named constructions of every group of order at most 16, plus a few
//! larger groups used for lattice searches.

use crate::{FiniteGroup, RamificationError};

type G = FiniteGroup;

fn z(n: usize) -> Result<G, RamificationError> {
    G::cyclic(n)
}

fn prod(parts: &[G]) -> Result<G, RamificationError> {
    parts.iter().try_fold(z(1)?, |acc, g| G::direct_product(&acc, g))
}

/// `(Z/2)^2 ⋊ Z/n` through `(i, j) ↦ (j, i+j)` (n = 3) or the swap (n = 4).
fn klein_extension(n: usize) -> Result<G, RamificationError> {
    let v4 = G::elementary_abelian(2, 2)?;
    // element (i, j) has index 2i + j
    let phi: Vec<usize> = (0..4)
        .map(|x| {
            let (i, j) = (x / 2, x % 2);
            if n == 3 {
                2 * j + (i ^ j)
            } else {
                2 * j + i
            }
        })
        .collect();
    G::semidirect(&v4, n, &phi)
}

/// `(Z/4 × Z/2) ⋊ Z/2` through `(i, j) ↦ (i + 2j, j)`.
fn pauli() -> Result<G, RamificationError> {
    let base = prod(&[z(4)?, z(2)?])?;
    let phi: Vec<usize> = (0..8)
        .map(|x| {
            let (i, j) = (x / 2, x % 2);
            ((i + 2 * j) % 4) * 2 + j
        })
        .collect();
    G::semidirect(&base, 2, &phi)
}

/// All groups of order ≤ 16 up to isomorphism, one representative each.
pub fn groups_up_to_16() -> Result<Vec<(String, G)>, RamificationError> {
    let named: Vec<(&str, G)> = vec![
        ("Z1", z(1)?),
        ("Z2", z(2)?),
        ("Z3", z(3)?),
        ("Z4", z(4)?),
        ("Z2^2", G::elementary_abelian(2, 2)?),
        ("Z5", z(5)?),
        ("Z6", z(6)?),
        ("S3", G::dihedral(3)?),
        ("Z7", z(7)?),
        ("Z8", z(8)?),
        ("Z4xZ2", prod(&[z(4)?, z(2)?])?),
        ("Z2^3", G::elementary_abelian(2, 3)?),
        ("D8", G::dihedral(4)?),
        ("Q8", G::dicyclic(2)?),
        ("Z9", z(9)?),
        ("Z3^2", G::elementary_abelian(3, 2)?),
        ("Z10", z(10)?),
        ("D10", G::dihedral(5)?),
        ("Z11", z(11)?),
        ("Z12", z(12)?),
        ("Z2xZ6", prod(&[z(2)?, z(6)?])?),
        ("D12", G::dihedral(6)?),
        ("A4", klein_extension(3)?),
        ("Dic12", G::dicyclic(3)?),
        ("Z13", z(13)?),
        ("Z14", z(14)?),
        ("D14", G::dihedral(7)?),
        ("Z15", z(15)?),
        ("Z16", z(16)?),
        ("Z4^2", prod(&[z(4)?, z(4)?])?),
        ("Z8xZ2", prod(&[z(8)?, z(2)?])?),
        ("Z4xZ2^2", prod(&[z(4)?, z(2)?, z(2)?])?),
        ("Z2^4", G::elementary_abelian(2, 4)?),
        ("Z2^2:Z4", klein_extension(4)?),
        ("Z4:Z4", G::semidirect_cyclic(4, 4, 3)?),
        ("M16", G::semidirect_cyclic(8, 2, 5)?),
        ("D16", G::dihedral(8)?),
        ("SD16", G::semidirect_cyclic(8, 2, 3)?),
        ("Q16", G::dicyclic(4)?),
        ("D8xZ2", prod(&[G::dihedral(4)?, z(2)?])?),
        ("Q8xZ2", prod(&[G::dicyclic(2)?, z(2)?])?),
        ("Pauli", pauli()?),
    ];
    Ok(named.into_iter().map(|(n, g)| (n.to_string(), g)).collect())
}

/// Non-abelian groups of orders 18 to 24.
pub fn extra_groups() -> Result<Vec<(String, G)>, RamificationError> {
    let s4 = G::from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])?;
    let named: Vec<(&str, G)> = vec![
        ("D18", G::dihedral(9)?),
        ("Z3xS3", prod(&[z(3)?, G::dihedral(3)?])?),
        ("D20", G::dihedral(10)?),
        ("Z5:Z4", G::semidirect_cyclic(5, 4, 2)?),
        ("Z7:Z3", G::semidirect_cyclic(7, 3, 2)?),
        ("S4", s4),
        ("Z2xA4", prod(&[z(2)?, klein_extension(3)?])?),
        ("D24", G::dihedral(12)?),
        ("Z3:Z8", G::semidirect_cyclic(3, 8, 2)?),
    ];
    Ok(named.into_iter().map(|(n, g)| (n.to_string(), g)).collect())
}

/// Looks a group up by its catalog name.
pub fn by_name(name: &str) -> Result<Option<G>, RamificationError> {
    Ok(groups_up_to_16()?.into_iter().chain(extra_groups()?).find(|(n, _)| n == name).map(|(_, g)| g))
}
