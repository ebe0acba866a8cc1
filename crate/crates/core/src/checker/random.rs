use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{validate, Model, RawModel};

use super::enumerate::{agent_id, name_id, set_partitions, state_id, var_id};
use super::Bounds;

/// A random valid model, deterministic in `seed`.
///
/// Sizes are drawn uniformly up to the bounds, every view is present with
/// probability 1/2, partitions are drawn uniformly, each candidate referent
/// is kept with probability 1/2 and each view satisfies each variable
/// `p1..` with probability 1/2. An empty referent set is repaired with one
/// uniformly chosen present agent.
pub fn random_model(seed: u64, bounds: Bounds) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = rng.gen_range(0..=bounds.max_states());
    let agents = rng.gen_range(0..=bounds.max_agents());
    let names = rng.gen_range(1..=bounds.max_names());

    let presence: Vec<Vec<usize>> = (0..agents)
        .map(|_| (0..states).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let mut raw = RawModel {
        states: (0..states).map(state_id).collect(),
        agents: (0..agents).map(agent_id).collect(),
        names: (0..names).map(name_id).collect(),
        ..RawModel::default()
    };

    for (a, present) in presence.iter().enumerate() {
        raw.presence
            .insert(agent_id(a), present.iter().map(|&s| state_id(s)).collect());
        let partitions = set_partitions(present.len());
        let rgs = partitions.choose(&mut rng).expect("at least one partition");
        let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (&s, &c) in present.iter().zip(rgs) {
            classes.entry(c).or_default().push(state_id(s));
        }
        raw.indist
            .insert(agent_id(a), classes.into_values().collect());
    }

    let here =
        |s: usize| -> Vec<usize> { (0..agents).filter(|&a| presence[a].contains(&s)).collect() };
    for (a, present) in presence.iter().enumerate() {
        for &s in present {
            let candidates = here(s);
            for n in 0..names {
                let mut chosen: Vec<usize> = candidates
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                if chosen.is_empty() {
                    chosen.push(*candidates.choose(&mut rng).expect("user is present"));
                }
                for r in chosen {
                    raw.ident
                        .push([agent_id(a), state_id(s), name_id(n), agent_id(r)]);
                }
            }
        }
    }

    let views: Vec<[String; 2]> = presence
        .iter()
        .enumerate()
        .flat_map(|(a, ps)| ps.iter().map(move |&s| [agent_id(a), state_id(s)]))
        .collect();
    for v in 0..bounds.max_vars() {
        let holds = views
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        raw.valuation.insert(var_id(v), holds);
    }

    validate(&raw).expect("random models satisfy every condition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let b = Bounds::new(3, 3, 2, 2).unwrap();
        assert_eq!(random_model(42, b), random_model(42, b));
    }

    #[test]
    fn always_valid_and_varied() {
        let b = Bounds::new(3, 3, 2, 2).unwrap();
        let mut empty_presence = false;
        let mut full_presence = false;
        for seed in 0..1000 {
            let m = random_model(seed, b);
            assert_eq!(validate(&m.to_raw()).as_ref(), Ok(&m));
            for a in m.agents() {
                let p = m.presence(a).unwrap();
                empty_presence |= p.is_empty() && !m.states().is_empty();
                full_presence |= m.states().len() == 3 && p.len() == 3;
            }
        }
        assert!(empty_presence && full_presence);
    }
}
