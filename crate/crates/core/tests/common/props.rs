//! Property checks shared by the property tests and the acceptance run.
//! Each returns a one-line summary or the first counterexample.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use transfer_systems::arrowset::ArrowSet;
use transfer_systems::basis::{all_minimal_bases, level_profile, minimal_basis, width};
use transfer_systems::closure::ArrowTables;
use transfer_systems::enumerate::{enumerate, EnumerateOptions};
use transfer_systems::invariants::{complexity, width_against_complete};
use transfer_systems::lattice::perm::{affine_f8_generators, permutation_group_lattice, symmetric_group_generators};
use transfer_systems::lattice::{build_subspace_lattice, GroupLattice};

use super::{chain, small_lattices, Naive};

pub type Check = Result<String, String>;

fn random_seed(rng: &mut StdRng, tables: &ArrowTables, density: f64) -> ArrowSet {
    let k = tables.arrow_count();
    ArrowSet::from_ids(k, (0..k).filter(|_| rng.gen_bool(density)))
}

pub fn closure_lattices() -> Vec<GroupLattice> {
    let mut out = small_lattices();
    out.push(chain(&[2, 2]));
    out.push(chain(&[1, 1, 1, 1]));
    out.push(build_subspace_lattice(2, 3).unwrap());
    out.push(permutation_group_lattice("S4", 4, &symmetric_group_generators(4)).unwrap());
    out
}

/// Extensive, monotone and idempotent on random seeds; both closure paths agree.
pub fn closure_laws(seeds_per_lattice: usize, rng_seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let mut checked = 0;
    for l in closure_lattices() {
        let name = l.name().to_string();
        let t = ArrowTables::new(l);
        for _ in 0..seeds_per_lattice {
            let density = rng.gen_range(0.0..0.3);
            let a = random_seed(&mut rng, &t, density);
            let mut b = a.clone();
            b.union_with(&random_seed(&mut rng, &t, 0.1));
            let ca = t.close(&a);
            let cb = t.close(&b);
            if !a.is_subset(ca.arrows()) {
                return Err(format!("{name}: closure of {a:?} does not contain it"));
            }
            if !ca.arrows().is_subset(cb.arrows()) {
                return Err(format!("{name}: closure not monotone at {a:?} <= {b:?}"));
            }
            if t.close(ca.arrows()) != ca {
                return Err(format!("{name}: closure of {a:?} not idempotent"));
            }
            if t.close_staged(&a) != ca {
                return Err(format!("{name}: staged closure differs at {a:?}"));
            }
            if t.is_closed(ca.arrows()) != Ok(true) {
                return Err(format!("{name}: closure of {a:?} fails is_closed"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} random seeds"))
}

/// Enumeration and closure agree with the naive oracle on lattices of at most eight elements.
pub fn oracle_equivalence(seeds_per_lattice: usize, rng_seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let mut systems = 0;
    for l in small_lattices() {
        let name = l.name().to_string();
        let naive = Naive::new(&l);
        let t = ArrowTables::new(l);
        let mut expected = naive.all_systems();
        expected.sort_unstable();
        let r = enumerate(&t, &EnumerateOptions::stored(1)).map_err(|e| e.to_string())?;
        let mut got: Vec<u64> = r.systems.unwrap().iter().map(|(s, _)| naive.system_mask(&t, s)).collect();
        got.sort_unstable();
        if got != expected {
            return Err(format!("{name}: enumerated {} systems, oracle {}", got.len(), expected.len()));
        }
        systems += got.len();
        for _ in 0..seeds_per_lattice {
            let seed = random_seed(&mut rng, &t, 0.2);
            let arrows = t.arrows_of(&seed);
            let want = naive.close(naive.mask_of(&arrows));
            let have = naive.system_mask(&t, &t.close(&seed));
            if want != have {
                return Err(format!("{name}: closure of {arrows:?} differs from the oracle"));
            }
        }
    }
    Ok(format!("{systems} systems on {} lattices", small_lattices().len()))
}

/// Brute-forced minimal bases: equal size, equal level profile, size equal to the
/// enumeration layer, and matching the library's basis search.
pub fn bases_and_strata(max_bits: u32) -> Check {
    let mut checked = 0;
    let mut skipped = 0;
    for l in small_lattices() {
        let name = l.name().to_string();
        let naive = Naive::new(&l);
        let t = ArrowTables::new(l);
        let r = enumerate(&t, &EnumerateOptions::stored(1)).map_err(|e| e.to_string())?;
        for (sys, layer) in r.systems.unwrap() {
            let mask = naive.system_mask(&t, &sys);
            if mask.count_ones() > max_bits {
                skipped += 1;
                continue;
            }
            let bases = naive.minimal_bases(mask);
            let sizes: BTreeSet<u32> = bases.iter().map(|b| b.count_ones()).collect();
            let profiles: BTreeSet<_> = bases.iter().map(|&b| naive.profile(b)).collect();
            if sizes.len() != 1 || profiles.len() != 1 {
                return Err(format!("{name}: {sys:?} has bases of sizes {sizes:?}, profiles {profiles:?}"));
            }
            let m = *sizes.first().unwrap() as usize;
            if m != layer {
                return Err(format!("{name}: {sys:?} sits in layer {layer} but m(T) = {m}"));
            }
            let b = minimal_basis(&t, &sys);
            let b_arrows = t.arrows_of(&b.arrows);
            if b.len() != m || level_profile(t.lattice(), &b_arrows) != *profiles.first().unwrap() {
                return Err(format!("{name}: library basis of {sys:?} is {b_arrows:?}"));
            }
            let mut lib: Vec<u64> = all_minimal_bases(&t, &sys, 1 << 20)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|s| naive.mask_of(&t.arrows_of(s)))
                .collect();
            lib.sort_unstable();
            let mut want = bases.clone();
            want.sort_unstable();
            if lib != want {
                return Err(format!("{name}: {sys:?} has {} minimal bases, library lists {}", want.len(), lib.len()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} systems, {skipped} over {max_bits} arrows skipped"))
}

pub fn width_lattices() -> Vec<GroupLattice> {
    let mut out = closure_lattices();
    out.push(chain(&[1, 1, 1, 1, 1]));
    out.push(chain(&[3, 2]));
    out.push(build_subspace_lattice(3, 3).unwrap());
    out.push(permutation_group_lattice("F8", 8, &affine_f8_generators()).unwrap());
    out.push(permutation_group_lattice("S5", 5, &symmetric_group_generators(5)).unwrap());
    out
}

/// `width(G) = m(complete)`, by brute force where small and by basis search elsewhere.
pub fn width_is_complete_basis_size() -> Check {
    for l in small_lattices() {
        let naive = Naive::new(&l);
        let complete = (1u64 << naive.pairs.len()) - 1;
        if naive.pairs.len() > 20 {
            continue;
        }
        let m = naive.minimal_bases(complete)[0].count_ones() as usize;
        if m != width(&l) {
            return Err(format!("{}: width {}, m(complete) = {m}", l.name(), width(&l)));
        }
    }
    let lattices = width_lattices();
    for l in &lattices {
        let (w, m) = width_against_complete(&ArrowTables::new(l.clone()));
        if w != m {
            return Err(format!("{}: width {w}, m(complete) = {m}", l.name()));
        }
    }
    Ok(format!("{} lattices", lattices.len()))
}

/// `2^c <= |Tr(G)|` where `c` is the complexity.
pub fn complexity_bound() -> Check {
    let mut lattices = small_lattices();
    lattices.push(chain(&[2, 2]));
    lattices.push(chain(&[1, 3]));
    lattices.push(chain(&[3, 1]));
    lattices.push(permutation_group_lattice("S4", 4, &symmetric_group_generators(4)).unwrap());
    for l in &lattices {
        let c = complexity(&ArrowTables::new(l.clone()), 0).map_err(|e| e.to_string())?;
        if 1u64 << c.value > c.total_count {
            return Err(format!("{}: complexity {}, only {} systems", l.name(), c.value, c.total_count));
        }
        if !c.stratum_mismatches.is_empty() {
            return Err(format!("{}: {} stratum mismatches", l.name(), c.stratum_mismatches.len()));
        }
    }
    Ok(format!("{} lattices", lattices.len()))
}
