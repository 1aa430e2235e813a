use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use switchlearn::generate::random_field;
use switchlearn::{
    catalog, learn_all_subsystems, learn_subsystem, learn_subsystem_with, Error, GrayBoxOracle,
    PolynomialVectorField, SampleNodes, SubsystemOracle, SwitchedSystemSpec,
};

fn oracle_for(fields: Vec<PolynomialVectorField>, dim: usize, order: usize) -> GrayBoxOracle {
    let g = catalog::unrestricted(fields.len());
    GrayBoxOracle::new(SwitchedSystemSpec::new(dim, order, 4, fields, g).unwrap())
}

#[test]
fn three_mode_first_subsystem() {
    let oracle = GrayBoxOracle::new(catalog::three_mode_system());
    let f1 = learn_subsystem(&oracle, 1, 3, 3).unwrap();
    let want = [
        [-0.0625, 0.125, -0.25, 0.5],
        [0.0625, -0.125, 0.25, 0.5],
        [0.0625, -0.125, 0.25, -0.5],
    ];
    for (i, row) in want.iter().enumerate() {
        for (k, a) in row.iter().enumerate() {
            assert!((f1.coeff(i, k) - a).abs() <= 1e-9, "a_{i}{k}");
        }
    }
    assert_eq!(oracle.stats().eval_queries, 4);
}

#[test]
fn constant_field_uses_one_query() {
    let truth = PolynomialVectorField::new(1, vec![vec![2.5], vec![-1.0]]).unwrap();
    let oracle = oracle_for(vec![truth.clone()], 2, 0);
    let learned = learn_subsystem(&oracle, 1, 2, 0).unwrap();
    assert_eq!(learned, truth);
    assert_eq!(oracle.stats().eval_queries, 1);
}

#[test]
fn components_are_independent() {
    // identical polynomial in every component except the last
    let truth = PolynomialVectorField::new(
        1,
        vec![
            vec![1.0, 2.0, 3.0],
            vec![1.0, 2.0, 3.0],
            vec![0.0, 0.0, -7.0],
        ],
    )
    .unwrap();
    let oracle = oracle_for(vec![truth.clone()], 3, 2);
    let learned = learn_subsystem(&oracle, 1, 3, 2).unwrap();
    assert!(learned.max_abs_diff(&truth) <= 1e-12);
}

#[test]
fn symmetric_nodes_agree_with_canonical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for order in 0..=5 {
        let truth = random_field(&mut rng, 1, 2, order, 100.0);
        let oracle = oracle_for(vec![truth.clone()], 2, order);
        let canonical = learn_subsystem(&oracle, 1, 2, order).unwrap();
        let symmetric = learn_subsystem_with(&oracle, 1, 2, order, SampleNodes::Symmetric).unwrap();
        assert!(canonical.max_abs_diff(&truth) <= 1e-6, "order {order}");
        assert!(symmetric.max_abs_diff(&truth) <= 1e-6, "order {order}");
    }
}

#[test]
fn query_count_over_all_subsystems() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let fields: Vec<_> = (1..=4)
        .map(|p| random_field(&mut rng, p, 3, 5, 10.0))
        .collect();
    let oracle = oracle_for(fields.clone(), 3, 5);
    let learned = learn_all_subsystems(&oracle, 4, 3, 5).unwrap();
    assert_eq!(oracle.stats().eval_queries, 4 * 6);
    for (a, b) in learned.iter().zip(&fields) {
        assert_eq!(a.subsystem(), b.subsystem());
        assert!(a.max_abs_diff(b) <= 1e-6);
    }
}

#[test]
fn unknown_subsystem_is_reported() {
    let oracle = GrayBoxOracle::new(catalog::three_mode_system());
    assert!(matches!(
        learn_subsystem(&oracle, 9, 3, 3),
        Err(Error::UnknownSubsystem(9))
    ));
    assert!(oracle.eval_subsystem(1, &[0.0; 3]).is_ok());
}
