use crate::error::{Error, Result};
use crate::matrep::{is_semisimple, Representation};

/// G-cr verdicts for a block-diagonal subgroup, computed on the full space
/// and on each block separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviReport {
    pub block_sizes: Vec<usize>,
    pub full: bool,
    pub blocks: Vec<bool>,
}

impl LeviReport {
    /// The conjunction of the block verdicts matches the full verdict.
    pub fn agrees(&self) -> bool {
        self.full == self.blocks.iter().all(|&b| b)
    }
}

pub fn levi_descent(rep: &Representation, block_sizes: &[usize]) -> Result<LeviReport> {
    if block_sizes.iter().sum::<usize>() != rep.n() || block_sizes.contains(&0) {
        return Err(Error::NotBlockDiagonal(block_sizes.to_vec()));
    }
    if !rep.generators().iter().all(|g| g.is_block_diagonal(block_sizes)) {
        return Err(Error::NotBlockDiagonal(block_sizes.to_vec()));
    }
    let full = is_semisimple(rep)?.is_semisimple();
    let blocks = (0..block_sizes.len())
        .map(|b| {
            let gens = rep.generators().iter().map(|g| g.diagonal_block(block_sizes, b)).collect();
            Ok(is_semisimple(&Representation::new(rep.field(), gens)?)?.is_semisimple())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(LeviReport { block_sizes: block_sizes.to_vec(), full, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldSpec;

    #[test]
    fn examples() {
        let f2 = FieldSpec::Prime(2);
        let u = Representation::from_i64(f2, &[vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]]).unwrap();
        let r = levi_descent(&u, &[2, 1]).unwrap();
        assert_eq!((r.full, r.blocks.clone()), (false, vec![false, true]));
        assert!(r.agrees());
        let whole = levi_descent(&u, &[3]).unwrap();
        assert!(whole.agrees());
        assert!(matches!(levi_descent(&u, &[1, 2]), Err(Error::NotBlockDiagonal(_))));
        assert!(matches!(levi_descent(&u, &[1, 1]), Err(Error::NotBlockDiagonal(_))));

        let f3 = FieldSpec::Prime(3);
        let d = Representation::from_i64(f3, &[vec![vec![1, 0], vec![0, 2]]]).unwrap();
        let r = levi_descent(&d, &[1, 1]).unwrap();
        assert_eq!((r.full, r.blocks), (true, vec![true, true]));
    }
}
