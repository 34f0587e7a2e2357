//! Tampered witnesses and the check that must catch each kind of damage.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::TestRng;
use wazz::zigzag::{verify_zigzag, Check, NodeKind, ZigZag};

/// How many tampered copies of each kind were caught.
#[derive(Debug, Default, Clone, Copy)]
pub struct Caught {
    pub morphism: usize,
    pub relating: usize,
    pub kind: usize,
    pub family: usize,
}

impl Caught {
    pub fn total(&self) -> usize {
        self.morphism + self.relating + self.kind + self.family
    }
}

/// `+1` at an entry `(i, j)` of some morphism where the target output
/// `out_i` is nonzero and a source generator has `g_j != 0`, so the output
/// square breaks.
fn bump_morphism(rng: &mut TestRng, z: &ZigZag) -> Option<ZigZag> {
    let mut spots = Vec::new();
    for (k, m) in z.morphisms.iter().enumerate() {
        let (src, tgt) = (&z.nodes[m.from], &z.nodes[m.to]);
        for i in (0..tgt.dim).filter(|&i| !tgt.out[i].is_zero()) {
            for j in (0..src.dim).filter(|&j| src.generators.iter().any(|g| !g[j].is_zero())) {
                spots.push((k, i, j));
            }
        }
    }
    let &(k, i, j) = spots.choose(rng)?;
    let mut t = z.clone();
    t.morphisms[k].matrix[(i, j)] += wazz::linalg::Rat::one();
    Some(t)
}

fn expect(z: &ZigZag, what: &str, ok: impl Fn(&[Check]) -> bool) -> Result<(), String> {
    let failing = verify_zigzag(z).failing_checks();
    if ok(&failing) {
        Ok(())
    } else {
        Err(format!("{what}: checker reported {failing:?}"))
    }
}

/// Applies every kind of damage to the valid witness `z` and requires the
/// verifier to name the matching check.
pub fn tamper(rng: &mut TestRng, z: &ZigZag, caught: &mut Caught) -> Result<(), String> {
    if !verify_zigzag(z).valid() {
        return Err("the untouched witness does not verify".into());
    }
    if let Some(t) = bump_morphism(rng, z) {
        expect(&t, "bumped morphism entry", |f| f.contains(&Check::MorphismSquare))?;
        caught.morphism += 1;
    }

    let chain_or_ends = |f: &[Check]| f.contains(&Check::ChainCondition) || f.contains(&Check::Endpoints);
    let k = rng.gen_range(0..z.relating.len());
    let mut t = z.clone();
    t.relating.remove(k);
    expect(&t, "removed relating element", chain_or_ends)?;
    caught.relating += 1;
    // Zero-dimensional nodes have nothing to perturb.
    let sized: Vec<usize> = (0..z.relating.len()).filter(|&i| !z.relating[i].1.is_empty()).collect();
    if let Some(&k) = sized.choose(rng) {
        let mut t = z.clone();
        let v = &mut t.relating[k].1;
        let c = rng.gen_range(0..v.len());
        v[c] += wazz::linalg::Rat::one();
        expect(&t, "perturbed relating element", chain_or_ends)?;
        caught.relating += 1;
    }

    let sinks = z.sinks();
    let s = *sinks.choose(rng).expect("witnesses have sinks");
    let generated = if z.nodes[s].kind.is_pca() { NodeKind::GeneratedPca } else { NodeKind::GeneratedModule };
    let mut t = z.clone();
    t.nodes[s].kind = generated;
    expect(&t, "generated sink", |f| f == [Check::Shape])?;
    caught.kind += 1;

    let i = rng.gen_range(0..z.nodes.len());
    let wrong = match z.nodes[i].kind {
        NodeKind::FreeModule => NodeKind::FreePca,
        NodeKind::GeneratedModule => NodeKind::GeneratedPca,
        NodeKind::FreePca => NodeKind::FreeModule,
        NodeKind::GeneratedPca => NodeKind::GeneratedModule,
    };
    let mut t = z.clone();
    t.nodes[i].kind = wrong;
    expect(&t, "node from the wrong family", |f| f.contains(&Check::NodeWellFormed) || f.contains(&Check::Shape))?;
    caught.family += 1;
    Ok(())
}
