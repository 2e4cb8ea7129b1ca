//! Sorted-vector multisets of action ids.

use super::ActionId;

/// All ways to write `ms = a ⊎ b`, including the empty and full parts.
/// Each distinct pair of sub-multisets appears once.
pub(crate) fn splits(ms: &[ActionId]) -> Vec<(Vec<ActionId>, Vec<ActionId>)> {
    let groups = group(ms);
    let mut out = Vec::new();
    let mut take = vec![0usize; groups.len()];
    loop {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for ((u, n), &k) in groups.iter().zip(&take) {
            a.extend(std::iter::repeat_n(*u, k));
            b.extend(std::iter::repeat_n(*u, n - k));
        }
        out.push((a, b));
        let mut i = 0;
        loop {
            if i == groups.len() {
                return out;
            }
            if take[i] < groups[i].1 {
                take[i] += 1;
                break;
            }
            take[i] = 0;
            i += 1;
        }
    }
}

/// Splits with both parts non-empty.
pub(crate) fn proper_splits(ms: &[ActionId]) -> Vec<(Vec<ActionId>, Vec<ActionId>)> {
    splits(ms).into_iter().filter(|(a, b)| !a.is_empty() && !b.is_empty()).collect()
}

pub(crate) fn union(a: &[ActionId], b: &[ActionId]) -> Vec<ActionId> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.sort();
    v
}

/// Distinct orderings of a multiset.
pub(crate) fn orderings(ms: &[ActionId]) -> Vec<Vec<ActionId>> {
    fn go(groups: &mut Vec<(ActionId, usize)>, cur: &mut Vec<ActionId>, len: usize, out: &mut Vec<Vec<ActionId>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..groups.len() {
            if groups[i].1 > 0 {
                groups[i].1 -= 1;
                cur.push(groups[i].0);
                go(groups, cur, len, out);
                cur.pop();
                groups[i].1 += 1;
            }
        }
    }
    let mut groups = group(ms);
    let mut out = Vec::new();
    go(&mut groups, &mut Vec::new(), ms.len(), &mut out);
    out
}

fn group(ms: &[ActionId]) -> Vec<(ActionId, usize)> {
    let mut groups: Vec<(ActionId, usize)> = Vec::new();
    for &u in ms {
        match groups.last_mut() {
            Some((v, n)) if *v == u => *n += 1,
            _ => groups.push((u, 1)),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<ActionId> {
        v.iter().map(|&i| ActionId(i)).collect()
    }

    #[test]
    fn split_counts() {
        assert_eq!(splits(&ids(&[0, 1, 2])).len(), 8);
        // multiplicities 2 and 1 give 3 * 2 sub-multisets
        assert_eq!(splits(&ids(&[0, 0, 1])).len(), 6);
        assert_eq!(proper_splits(&ids(&[0, 0, 1])).len(), 4);
        assert_eq!(splits(&[]).len(), 1);
    }

    #[test]
    fn ordering_counts() {
        assert_eq!(orderings(&ids(&[0, 1, 2])).len(), 6);
        assert_eq!(orderings(&ids(&[0, 0, 1])).len(), 3);
        assert_eq!(orderings(&ids(&[3, 3])), vec![ids(&[3, 3])]);
    }
}
