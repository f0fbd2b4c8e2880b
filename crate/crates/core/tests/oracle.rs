mod common;

use common::{corpus, hilbert_oracle, load};
use hodge_forge::bergman::bergman_fan;
use hodge_forge::chow::ChowSpace;

#[test]
fn hilbert_matches_dense_elimination() {
    for (name, m) in corpus() {
        let fan = bergman_fan(&m);
        let ch = ChowSpace::new(&fan);
        // The top degrees of the largest fans are covered by symmetry.
        let upto = if fan.num_rays() > 20 { ch.top_degree().min(2) } else { ch.top_degree() };
        let oracle = hilbert_oracle(&fan, upto);
        assert_eq!(&ch.hilbert()[..=upto], &oracle[..], "{name}");
    }
}

#[test]
fn oracle_values() {
    let h = |n: &str| {
        let fan = bergman_fan(&load(n));
        let d = fan.dim();
        hilbert_oracle(&fan, d)
    };
    assert_eq!(h("b3"), vec![1, 4, 1]);
    assert_eq!(h("b4"), vec![1, 11, 11, 1]);
    assert_eq!(h("u23"), vec![1, 1]);
    assert_eq!(h("u34"), vec![1, 7, 1]);
}

#[test]
fn oracle_sees_nothing_beyond_top_degree() {
    let fan = bergman_fan(&load("b3"));
    assert_eq!(hilbert_oracle(&fan, 4), vec![1, 4, 1, 0, 0]);
}
