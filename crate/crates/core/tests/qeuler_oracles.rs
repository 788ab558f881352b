//! Cross-checks between independent routes to the q-Euler numbers and the
//! q-Bernstein basis.

use num_traits::One;
use qeuler::qcore::{self, BernsteinIndex, QBase, QEulerTable};
use qeuler::{BigRational, RationalFunction};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn recurrence_matches_closed_form_through_twenty() {
    let table = QEulerTable::new();
    for n in 0..=20 {
        assert_eq!(
            qcore::q_euler_number(n, &table),
            qcore::q_euler_number_closed(n),
            "n={n}"
        );
    }
}

#[test]
fn low_order_values_are_fixed() {
    let table = QEulerTable::new();
    let expect = ["1", "(-1*q) / (1 + q^2)"];
    for (n, s) in expect.iter().enumerate() {
        assert_eq!(table.get(n).to_string(), *s);
    }
    let xi2: RationalFunction = "(q^3 - q) / ((1 + q^2) * (1 + q^3))".parse().unwrap();
    assert_eq!(table.get(2), xi2);
}

#[test]
fn classical_limit_through_twenty() {
    let table = QEulerTable::new();
    let classical = qcore::classical_euler_table(20);
    assert_eq!(&classical[..4], &[rat(1, 1), rat(-1, 2), rat(0, 1), rat(1, 4)]);
    for (n, e) in classical.iter().enumerate() {
        assert_eq!(&table.get(n).eval(&BigRational::one()).unwrap(), e, "n={n}");
    }
}

#[test]
fn boundary_value_vanishes() {
    let table = QEulerTable::new();
    let q = RationalFunction::q();
    for n in 1..=15 {
        let lhs = &(&q * &qcore::q_euler_polynomial(n, 1, &table)) + &table.get(n);
        assert!(lhs.is_zero(), "n={n}");
    }
}

#[test]
fn polynomial_at_zero_is_the_number() {
    let table = QEulerTable::new();
    for n in 0..=10 {
        assert_eq!(qcore::q_euler_polynomial(n, 0, &table), table.get(n));
    }
}

#[test]
fn concurrent_table_readers_agree() {
    let table = std::sync::Arc::new(QEulerTable::new());
    let handles: Vec<_> = (0..4)
        .map(|i| {
            let t = table.clone();
            std::thread::spawn(move || (0..=12).rev().map(|n| t.get(n + i % 2)).collect::<Vec<_>>())
        })
        .collect();
    let serial = QEulerTable::new();
    for (i, h) in handles.into_iter().enumerate() {
        let values = h.join().unwrap();
        for (j, v) in values.iter().enumerate() {
            assert_eq!(v, &serial.get(12 - j + i % 2));
        }
    }
    for n in 0..table.len() {
        assert!(table.entry_satisfies_recurrence(n));
    }
}

#[test]
fn bernstein_partition_of_unity_and_reflection() {
    for n in 0..=10 {
        for x in -3..=4 {
            let terms: Vec<RationalFunction> = (0..=n)
                .map(|k| qcore::bernstein(BernsteinIndex::new(k, n).unwrap(), x))
                .collect();
            assert!(RationalFunction::sum_all(&terms).is_one(), "n={n} x={x}");
            let (lhs, rhs) = qcore::reflect_power(n, x);
            assert_eq!(lhs, rhs, "n={n} x={x}");
        }
    }
}

#[test]
fn q_numbers_reflect() {
    for x in -5..=5 {
        let sum = &qcore::q_number(x, QBase::Q) + &qcore::q_number(1 - x, QBase::InvQ);
        assert!(sum.is_one(), "x={x}");
        assert_eq!(
            qcore::q_number(x, QBase::InvQ),
            qcore::q_number(x, QBase::Q).subst_inverse()
        );
    }
}

#[test]
fn bernstein_rejects_bad_index() {
    assert!(BernsteinIndex::new(3, 2).is_err());
}
