use qfaulhaber::faulhaber::{faulhaber_p, power_sum, FaulhaberTable, Provenance};
use qfaulhaber::lgv::{bruteforce_family_sum, lgv_determinant, WeightConvention, DEFAULT_BUDGET};
use qfaulhaber::render::{q_latex, q_string, PolyJson};
use qfaulhaber::{salie, QPoly, TPoly};

#[test]
fn small_power_sums() {
    // S_{1,2} = 1 + q + q^2
    assert_eq!(power_sum(1, 2).unwrap(), TPoly::from_i64s(&[1, 0, 1, 0, 1]));
    assert_eq!(power_sum(3, 1).unwrap(), TPoly::from_i64s(&[1]));
    assert!(power_sum(0, 3).is_err());
}

#[test]
fn known_p_values() {
    assert_eq!(faulhaber_p(3, 1).unwrap(), QPoly::from_q_i64s(&[2, 2]));
    assert_eq!(
        faulhaber_p(6, 3).unwrap(),
        QPoly::from_q_i64s(&[28, 145, 407, 760, 1020, 1020, 760, 407, 145, 28])
    );
}

#[test]
fn table_routes_agree() {
    let table = FaulhaberTable::build(6, &[Provenance::Determinant, Provenance::Inverse], DEFAULT_BUDGET).unwrap();
    assert_eq!(table.cells.len(), 28);
    assert!(table.all_palindromic());
    assert_eq!(table.get(3, 2), Some(&QPoly::from_q_i64s(&[2, 2])));
}

#[test]
fn three_routes_for_one_cell() {
    let p = faulhaber_p(5, 2).unwrap();
    assert_eq!(lgv_determinant(5, 2, WeightConvention::EVEN).unwrap(), p);
    assert_eq!(bruteforce_family_sum(5, 2, WeightConvention::EVEN, DEFAULT_BUDGET).unwrap(), p);
    // the other parity convention gives the reversed polynomial, which is the same by symmetry
    assert_eq!(bruteforce_family_sum(5, 2, WeightConvention::ODD, DEFAULT_BUDGET).unwrap(), p);
}

#[test]
fn rendering_and_json() {
    let g = TPoly::from_i64s(&[2, -1, 2]);
    assert_eq!(q_string(&g), "2*q - q^(1/2) + 2");
    assert_eq!(q_latex(&g), "2q - q^{1/2} + 2");
    let j = PolyJson::from(&g);
    assert_eq!(TPoly::try_from(&j).unwrap(), g);
}

#[test]
fn salie_m3_has_half_power() {
    let fit = salie::salie_fit(3, 5, None).unwrap();
    assert!(fit.residual_ok);
    assert_eq!(fit.g[&1], TPoly::from_i64s(&[2, -1, 2]));
    assert_eq!(fit.g[&3], TPoly::from_i64s(&[1]));
}
