//! Seeded fixture generators.

use hopfcat::graded::{crossed_product, cyclic_table, Groupoid};
use hopfcat::lincat::{Algebra, ObjSet};
use hopfcat::{Field, Mat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures::{graded_file, groupoid_kg_file, indiscrete};
use crate::format::{StructureFile, Tensor};

pub const MAX_OBJECTS: usize = 4;
pub const MAX_HOM: usize = 3;
pub const MAX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub objects: usize,
    /// Order of the vertex groups, hence the size of nonempty hom-sets.
    pub order: usize,
    pub indiscrete: bool,
    /// Dimension of the base algebra of a crossed product (1 or 2).
    pub base_dim: usize,
}

impl Default for Params {
    fn default() -> Params {
        Params { objects: 1, order: 2, indiscrete: false, base_dim: 1 }
    }
}

impl Params {
    fn check(&self) -> Result<(), String> {
        if self.objects == 0 || self.objects > MAX_OBJECTS {
            return Err(format!("objects must be in 1..={}", MAX_OBJECTS));
        }
        if self.order == 0 || self.order > MAX_HOM {
            return Err(format!("group order must be in 1..={}", MAX_HOM));
        }
        if self.base_dim == 0 || self.base_dim > 2 || self.base_dim * self.order > MAX_DIM {
            return Err(format!("base dimension must be 1 or 2 with hom dimensions at most {}", MAX_DIM));
        }
        Ok(())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn object_labels(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
}

/// `n` objects times `Z/m`, every pair connected.
fn connected(n: usize, m: usize) -> Groupoid {
    if m == 1 {
        return indiscrete(n);
    }
    let mut g = Groupoid::cyclic_indiscrete(n, m).expect("indiscrete groupoids are groupoids");
    let l = object_labels(n);
    let pos: Vec<usize> = (0..g.size()).map(|s| g.position(s)).collect();
    g.labels = (0..g.size()).map(|s| format!("s{}_{}{}", pos[s], l[g.src[s]], l[g.dst[s]])).collect();
    g.objs = ObjSet::new(l).expect("distinct labels");
    g
}

/// A random groupoid: random components, each with a cyclic vertex group
/// of order at most `order`.
pub fn random_groupoid(p: &Params, seed: u64) -> Result<Groupoid, String> {
    p.check()?;
    if p.indiscrete {
        return Ok(connected(p.objects, p.order));
    }
    let mut r = rng(seed);
    let comp: Vec<usize> = (0..p.objects).map(|_| r.gen_range(0..p.objects)).collect();
    let groups: Vec<_> = (0..p.objects).map(|_| cyclic_table(r.gen_range(1..=p.order))).collect();
    let mut g = Groupoid::assemble(&comp, &groups).map_err(|e| e.to_string())?;
    let l = object_labels(p.objects);
    let pos: Vec<usize> = (0..g.size()).map(|s| g.position(s)).collect();
    g.labels = (0..g.size()).map(|s| format!("s{}_{}{}", pos[s], l[g.src[s]], l[g.dst[s]])).collect();
    g.objs = ObjSet::new(l).expect("distinct labels");
    Ok(g)
}

pub fn gen_groupoid_kg(p: &Params, seed: u64) -> Result<StructureFile, String> {
    let g = random_groupoid(p, seed)?;
    Ok(groupoid_kg_file(&g, Field::Rational))
}

fn nonzero(r: &mut ChaCha8Rng) -> i64 {
    *[-3i64, -2, -1, 1, 2, 3].choose(r).expect("nonempty")
}

/// A crossed product over a connected groupoid: `A_σ = R u_σ` with random
/// invertible twists, `R` one of `k`, `k[t]/(t²)`, `k × k`.
pub fn gen_crossed_product(p: &Params, seed: u64) -> Result<StructureFile, String> {
    p.check()?;
    let f = Field::Rational;
    let mut r = rng(seed);
    let g = connected(p.objects, p.order);
    let (base, kind) = match p.base_dim {
        1 => (Algebra::scalars(f), 0),
        _ => {
            if r.gen_bool(0.5) {
                let dual = Algebra::new(2, Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]), Mat::from_i64(f, 2, 1, &[1, 0]))
                    .expect("dual numbers");
                (dual, 1)
            } else {
                let split =
                    Algebra::new(2, Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 0, 0, 1]), Mat::from_i64(f, 2, 1, &[1, 1])).expect("k × k");
                (split, 2)
            }
        }
    };
    let twist: Vec<Mat> = (0..g.size())
        .map(|_| match kind {
            0 => Mat::from_i64(f, 1, 1, &[nonzero(&mut r)]),
            1 => Mat::from_i64(f, 2, 1, &[nonzero(&mut r), r.gen_range(-3..=3)]),
            _ => Mat::from_i64(f, 2, 1, &[nonzero(&mut r), nonzero(&mut r)]),
        })
        .collect();
    let (a, gr) = crossed_product(&g, &base, &twist).map_err(|e| e.to_string())?;
    Ok(graded_file(&g, &a, &gr))
}

/// Adds a random nonzero value to one random structure constant of a tensor
/// whose name contains `target` (any tensor when empty).
pub fn gen_perturbed(base: &StructureFile, target: &str, seed: u64) -> Result<StructureFile, String> {
    let mut r = rng(seed);
    let mut file = base.clone();
    let names: Vec<String> = file
        .tensors
        .iter()
        .filter(|(n, t)| n.contains(target) && t.from.iter().chain(&t.to).all(|s| file.spaces[s] > 0))
        .map(|(n, _)| n.clone())
        .collect();
    let name = names.choose(&mut r).ok_or_else(|| format!("no tensor matches '{}'", target))?.clone();
    let rational = file.field == crate::format::FieldSpec::Named("Q".into());
    let t: &mut Tensor = file.tensors.get_mut(&name).expect("chosen from the map");
    let mut entry: Vec<i64> = Vec::new();
    for s in t.from.iter().chain(&t.to) {
        entry.push(r.gen_range(0..base.spaces[s]) as i64);
    }
    entry.push(nonzero(&mut r));
    if rational {
        entry.push(1);
    }
    t.entries.push(entry);
    Ok(file)
}
