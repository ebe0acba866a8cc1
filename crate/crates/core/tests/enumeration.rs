use std::collections::BTreeSet;

use knowwho::checker::{enumerate_models, Bounds, ModelSpace};

/// Counts models straight from the definition: every presence relation,
/// every relation on present states that is an equivalence, every subset of
/// identification tuples meeting the referent conditions, every valuation.
fn brute_force_count(max_states: usize, max_agents: usize, max_names: usize, vars: usize) -> u64 {
    let mut total = 0;
    for s in 0..=max_states {
        for a in 0..=max_agents {
            for n in 1..=max_names {
                total += count_at(s, a, n, vars);
            }
        }
    }
    total
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..1u64 << items.len())
        .map(|m| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn is_equivalence(domain: &[usize], rel: &BTreeSet<(usize, usize)>) -> bool {
    domain.iter().all(|&x| rel.contains(&(x, x)))
        && rel.iter().all(|&(x, y)| rel.contains(&(y, x)))
        && rel.iter().all(|&(x, y)| {
            rel.iter()
                .filter(|&&(y2, _)| y2 == y)
                .all(|&(_, z)| rel.contains(&(x, z)))
        })
}

fn count_at(states: usize, agents: usize, names: usize, vars: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..agents)
        .flat_map(|a| (0..states).map(move |s| (a, s)))
        .collect();
    let mut total = 0;
    for presence in subsets(&pairs) {
        let present = |a: usize, s: usize| presence.contains(&(a, s));
        let mut equivalences: u64 = 1;
        for a in 0..agents {
            let dom: Vec<usize> = (0..states).filter(|&s| present(a, s)).collect();
            let all: Vec<(usize, usize)> = dom
                .iter()
                .flat_map(|&x| dom.iter().map(move |&y| (x, y)))
                .collect();
            equivalences *= subsets(&all)
                .into_iter()
                .filter(|r| is_equivalence(&dom, &r.iter().copied().collect()))
                .count() as u64;
        }
        let tuples: Vec<(usize, usize, usize, usize)> = (0..agents)
            .flat_map(|u| {
                (0..states).flat_map(move |s| {
                    (0..names).flat_map(move |n| (0..agents).map(move |r| (u, s, n, r)))
                })
            })
            .collect();
        let idents = subsets(&tuples)
            .into_iter()
            .filter(|ident| {
                let users_present = ident.iter().all(|&(u, s, _, _)| present(u, s));
                let referents_present = ident.iter().all(|&(_, s, _, r)| present(r, s));
                let total = presence.iter().all(|&(u, s)| {
                    (0..names).all(|n| {
                        ident
                            .iter()
                            .any(|&(u2, s2, n2, _)| (u2, s2, n2) == (u, s, n))
                    })
                });
                users_present && referents_present && total
            })
            .count() as u64;
        let valuations = 1u64 << (presence.len() * vars);
        total += equivalences * idents * valuations;
    }
    total
}

#[test]
fn space_sizes_match_brute_force() {
    for (s, a, n, v) in [(1, 1, 1, 1), (2, 2, 1, 1), (2, 1, 2, 1), (1, 2, 1, 2)] {
        let space = ModelSpace::new(Bounds::new(s, a, n, v).unwrap()).unwrap();
        assert_eq!(
            space.len(),
            brute_force_count(s, a, n, v) as u128,
            "({s},{a},{n},{v})"
        );
    }
}

#[test]
fn frozen_space_sizes() {
    let len = |s, a, n, v| {
        ModelSpace::new(Bounds::new(s, a, n, v).unwrap())
            .unwrap()
            .len()
    };
    assert_eq!(len(1, 1, 1, 1), 6);
    assert_eq!(len(2, 2, 1, 1), 5_927);
    assert_eq!(len(2, 2, 1, 2), 88_157);
    assert_eq!(len(2, 2, 2, 1), 432_046);
}

#[test]
fn enumeration_yields_each_model_once() {
    let models: Vec<_> = enumerate_models(Bounds::new(2, 2, 1, 1).unwrap())
        .unwrap()
        .map(|m| m.to_json())
        .collect();
    let distinct: BTreeSet<_> = models.iter().collect();
    assert_eq!(models.len(), 5_927);
    assert_eq!(distinct.len(), 5_927);
}
