use crate::error::{Error, Result};
use crate::exactalg::{solve_conjugating, ConjugatorSearch, Matrix};

use super::series::CompositionSeries;
use super::Representation;

/// An invertible `g` with `g·a_i·g⁻¹ = b_i` for every aligned generator pair.
pub fn module_iso(a: &Representation, b: &Representation) -> Result<Option<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.generators().len() != b.generators().len() {
        return Err(Error::GeneratorCountMismatch { left: a.generators().len(), right: b.generators().len() });
    }
    if a.n() != b.n() {
        return Ok(None);
    }
    match solve_conjugating(a.generators(), b.generators())? {
        ConjugatorSearch::Found(g) => Ok(Some(g)),
        ConjugatorSearch::Absent => Ok(None),
        ConjugatorSearch::Undecided(why) => Err(Error::Undecided(why)),
    }
}

/// Composition factors grouped into isomorphism classes, in order of first occurrence.
#[derive(Clone, Debug)]
pub struct IsoClassMultiset {
    pub classes: Vec<(Representation, usize)>,
}

impl IsoClassMultiset {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|(_, m)| m).sum()
    }

    /// Same classes with the same multiplicities, matched by `module_iso`.
    pub fn equivalent(&self, other: &IsoClassMultiset) -> Result<bool> {
        if self.classes.len() != other.classes.len() {
            return Ok(false);
        }
        let mut used = vec![false; other.classes.len()];
        for (rep, mult) in &self.classes {
            let mut matched = false;
            for (j, (orep, omult)) in other.classes.iter().enumerate() {
                if used[j] || omult != mult {
                    continue;
                }
                if module_iso(rep, orep)?.is_some() {
                    used[j] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn iso_class_multiset(series: &CompositionSeries) -> Result<IsoClassMultiset> {
    let mut classes: Vec<(Representation, usize)> = Vec::new();
    'factors: for f in &series.factors {
        for (rep, mult) in classes.iter_mut() {
            if module_iso(rep, f)?.is_some() {
                *mult += 1;
                continue 'factors;
            }
        }
        classes.push((f.clone(), 1));
    }
    Ok(IsoClassMultiset { classes })
}
