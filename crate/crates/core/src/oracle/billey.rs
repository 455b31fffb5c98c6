//! Restrictions of Schubert classes on complete flags by summing over
//! reduced subwords of a fixed reduced word.

use crate::exactalg::{LinearForm, Polynomial};
use crate::spaces::Permutation;

/// The root `x_{w(a)} - x_{w(a+1)}` in `n` variables.
fn root(n: usize, w: &Permutation, a: usize) -> LinearForm {
    LinearForm::unit(n, w.apply(a) - 1).sub(&LinearForm::unit(n, w.apply(a + 1) - 1))
}

/// Restriction of the class of `sigma` to the fixed point `mu`.
///
/// With `mu = s_{a_1} ⋯ s_{a_l}` reduced and `r_j = s_{a_1} ⋯ s_{a_{j-1}}(α_{a_j})`,
/// sums `prod_{j in J} r_j` over index sets `J` whose subword is a reduced
/// word for `sigma`.
pub fn billey_restrict(sigma: &Permutation, mu: &Permutation) -> Polynomial {
    let n = sigma.n();
    assert_eq!(n, mu.n(), "permutations of different sizes");
    let word = mu.reduced_word();
    let mut prefix = Permutation::identity(n);
    let mut roots = Vec::with_capacity(word.len());
    for &a in &word {
        roots.push(root(n, &prefix, a));
        prefix = prefix.swap_positions(a);
    }
    let target = sigma.length();
    let mut total = Polynomial::zero(n);
    if target > word.len() {
        return total;
    }
    let mut chosen = Vec::with_capacity(target);
    subwords(&word, &roots, sigma, target, 0, &mut chosen, &mut total);
    total
}

fn subwords(
    word: &[usize],
    roots: &[LinearForm],
    sigma: &Permutation,
    target: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    total: &mut Polynomial,
) {
    if chosen.len() == target {
        let n = sigma.n();
        let product = chosen
            .iter()
            .fold(Permutation::identity(n), |acc, &j| acc.swap_positions(word[j]));
        if product == *sigma && product.length() == target {
            let forms: Vec<LinearForm> = chosen.iter().map(|&j| roots[j].clone()).collect();
            *total = &*total + &Polynomial::product_of(n, &forms);
        }
        return;
    }
    let remaining = target - chosen.len();
    for j in start..=word.len().saturating_sub(remaining) {
        if j >= word.len() {
            break;
        }
        chosen.push(j);
        subwords(word, roots, sigma, target, j + 1, chosen, total);
        chosen.pop();
    }
}
