use std::collections::BTreeMap;

use crate::model::{validate, Model, RawModel};

use super::{Bounds, CheckError};

/// All set partitions of `{0, .., n-1}` as restricted growth strings, in
/// lexicographic order.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for block in 0..=max + 1 {
            prefix.push(block);
            let next_max = if block > max { block } else { max };
            extend(prefix, next_max, n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    extend(&mut prefix, 0, n, &mut out);
    out
}

pub(crate) fn state_id(i: usize) -> String {
    format!("s{}", i + 1)
}

pub(crate) fn agent_id(i: usize) -> String {
    format!("a{}", i + 1)
}

pub(crate) fn name_id(i: usize) -> String {
    format!("n{}", i + 1)
}

pub(crate) fn var_id(i: usize) -> String {
    format!("p{}", i + 1)
}

/// One presence assignment at fixed sizes; every other component varies
/// inside the block.
#[derive(Clone, Debug)]
struct Block {
    states: usize,
    agents: usize,
    names: usize,
    // per agent, bit s set iff present in state s
    presence: Vec<u32>,
    count: u128,
}

impl Block {
    fn present_states(&self, agent: usize) -> Vec<usize> {
        (0..self.states)
            .filter(|s| self.presence[agent] & (1 << s) != 0)
            .collect()
    }

    fn present_agents(&self, state: usize) -> Vec<usize> {
        (0..self.agents)
            .filter(|a| self.presence[*a] & (1 << state) != 0)
            .collect()
    }

    fn view_count(&self) -> usize {
        self.presence.iter().map(|p| p.count_ones() as usize).sum()
    }

    /// Mixed radices, most significant first: one partition digit per
    /// agent, one referent-set digit per (agent, present state, name), one
    /// extension digit per variable.
    fn radices(&self, vars: usize, bell: &[u128]) -> Option<Vec<u128>> {
        let mut out = Vec::new();
        for a in 0..self.agents {
            out.push(bell[self.present_states(a).len()]);
        }
        for a in 0..self.agents {
            for s in self.present_states(a) {
                let choices = 1u128.checked_shl(self.present_agents(s).len() as u32)? - 1;
                for _ in 0..self.names {
                    out.push(choices);
                }
            }
        }
        let per_var = 1u128.checked_shl(self.view_count() as u32)?;
        for _ in 0..vars {
            out.push(per_var);
        }
        Some(out)
    }
}

/// The finite, index-addressable space of canonical models within bounds.
///
/// Sizes run over `0..=max_states` states `s1..`, `0..=max_agents` agents
/// `a1..` and `min_names..=max_names` names `n1..`; the valuation ranges
/// over a fixed variable vocabulary. Models are ordered by sizes, then
/// presence, then partitions, identification and valuation.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    bounds: Bounds,
    vars: Vec<String>,
    partitions: Vec<Vec<Vec<usize>>>,
    blocks: Vec<Block>,
    // exclusive prefix sums of block counts
    offsets: Vec<u128>,
    total: u128,
}

impl ModelSpace {
    /// Space over the canonical variables `p1..p{max_vars}`.
    pub fn new(bounds: Bounds) -> Result<Self, CheckError> {
        let vars = (0..bounds.max_vars()).map(var_id).collect();
        Self::with_vocabulary(bounds, vars, 1)
    }

    /// Space over the given variables, with at least `min_names` names.
    pub fn with_vocabulary(
        bounds: Bounds,
        vars: Vec<String>,
        min_names: usize,
    ) -> Result<Self, CheckError> {
        if bounds.max_names() == 0 {
            return Err(CheckError::NoNames);
        }
        if bounds.max_states() > 31 || bounds.max_states() * bounds.max_agents() > 63 {
            return Err(CheckError::SpaceTooLarge);
        }
        let partitions: Vec<Vec<Vec<usize>>> =
            (0..=bounds.max_states()).map(set_partitions).collect();
        let bell: Vec<u128> = partitions.iter().map(|p| p.len() as u128).collect();

        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut total: u128 = 0;
        for states in 0..=bounds.max_states() {
            for agents in 0..=bounds.max_agents() {
                for names in min_names.max(1)..=bounds.max_names() {
                    let codes = 1u64 << (states * agents);
                    for code in 0..codes {
                        let mask = (1u64 << states) - 1;
                        let presence = (0..agents)
                            .map(|a| ((code >> (a * states)) & mask) as u32)
                            .collect();
                        let mut block = Block {
                            states,
                            agents,
                            names,
                            presence,
                            count: 0,
                        };
                        let radices = block
                            .radices(vars.len(), &bell)
                            .ok_or(CheckError::SpaceTooLarge)?;
                        block.count = radices
                            .iter()
                            .try_fold(1u128, |acc, r| acc.checked_mul(*r))
                            .ok_or(CheckError::SpaceTooLarge)?;
                        offsets.push(total);
                        total = total
                            .checked_add(block.count)
                            .ok_or(CheckError::SpaceTooLarge)?;
                        blocks.push(block);
                    }
                }
            }
        }
        Ok(ModelSpace {
            bounds,
            vars,
            partitions,
            blocks,
            offsets,
            total,
        })
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The model at `index`, or `None` past the end.
    pub fn get(&self, index: u128) -> Option<Model> {
        if index >= self.total {
            return None;
        }
        let b = self.offsets.partition_point(|&o| o <= index) - 1;
        let block = &self.blocks[b];
        let bell: Vec<u128> = self.partitions.iter().map(|p| p.len() as u128).collect();
        let radices = block
            .radices(self.vars.len(), &bell)
            .expect("checked at construction");
        let mut rest = index - self.offsets[b];
        let mut digits = vec![0u128; radices.len()];
        for (d, r) in digits.iter_mut().zip(&radices).rev() {
            *d = rest % r;
            rest /= r;
        }
        Some(self.decode(block, &digits))
    }

    fn decode(&self, block: &Block, digits: &[u128]) -> Model {
        let mut digits = digits.iter().copied();
        let mut raw = RawModel {
            states: (0..block.states).map(state_id).collect(),
            agents: (0..block.agents).map(agent_id).collect(),
            names: (0..block.names).map(name_id).collect(),
            ..RawModel::default()
        };
        for a in 0..block.agents {
            let present = block.present_states(a);
            raw.presence
                .insert(agent_id(a), present.iter().map(|&s| state_id(s)).collect());
            let rgs = &self.partitions[present.len()][digits.next().unwrap() as usize];
            let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for (&s, &class) in present.iter().zip(rgs) {
                classes.entry(class).or_default().push(state_id(s));
            }
            raw.indist
                .insert(agent_id(a), classes.into_values().collect());
        }
        for a in 0..block.agents {
            for s in block.present_states(a) {
                let candidates = block.present_agents(s);
                for n in 0..block.names {
                    let mask = digits.next().unwrap() + 1;
                    for (i, &r) in candidates.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            raw.ident
                                .push([agent_id(a), state_id(s), name_id(n), agent_id(r)]);
                        }
                    }
                }
            }
        }
        let views: Vec<[String; 2]> = (0..block.agents)
            .flat_map(|a| {
                block
                    .present_states(a)
                    .into_iter()
                    .map(move |s| [agent_id(a), state_id(s)])
            })
            .collect();
        for var in &self.vars {
            let mask = digits.next().unwrap();
            let holds = views
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.clone())
                .collect();
            raw.valuation.insert(var.clone(), holds);
        }
        validate(&raw).expect("enumerated models satisfy every condition")
    }

    /// Every model in index order.
    pub fn iter(&self) -> impl Iterator<Item = Model> + '_ {
        (0..self.total).map(move |i| self.get(i).expect("index in range"))
    }
}

/// Every canonical model within `bounds`, in index order.
pub fn enumerate_models(bounds: Bounds) -> Result<impl Iterator<Item = Model>, CheckError> {
    let space = ModelSpace::new(bounds)?;
    Ok((0..space.len()).map(move |i| space.get(i).expect("index in range")))
}
