//! The hypergeometric toolbox behind the closed-form estimators: the same
//! value reached by different routes.
//!
//! cargo run --example special_functions

use ordrel::specfun::{
    appell_f1, appell_f1_euler, appell_f1_series, gauss_2f1, gauss_2f1_euler, hyper_3f2,
    lauricella_fd, pochhammer, EvalPolicy,
};

fn main() -> ordrel::Result<()> {
    let p = EvalPolicy::default();

    println!("(0.5)_4 = {}", pochhammer(0.5, 4));

    // 2F1(1,1;2;x) = -ln(1-x)/x
    let x = 0.6;
    println!(
        "2F1(1,1;2;{x}): dispatcher {:.15}  Euler {:.15}  closed form {:.15}",
        gauss_2f1(1.0, 1.0, 2.0, x, &p)?,
        gauss_2f1_euler(1.0, 1.0, 2.0, x, &p)?,
        -(1.0 - x).ln() / x
    );

    // A terminating 3F2 is a finite polynomial.
    println!("3F2(-3,2,1.5;4,2.5;0.7) = {:.15}", hyper_3f2([-3.0, 2.0, 1.5], [4.0, 2.5], 0.7, &p)?);

    let (a, b1, b2, c, x, y) = (1.5, 0.7, 1.2, 3.2, 0.4, -0.3);
    println!("F1({a};{b1},{b2};{c};{x},{y}):");
    println!("  series   {:.15}", appell_f1_series(a, b1, b2, c, x, y, &p)?);
    println!("  Euler    {:.15}", appell_f1_euler(a, b1, b2, c, x, y, &p)?);
    println!("  FD(2)    {:.15}", lauricella_fd(a, &[b1, b2], c, &[x, y], &p)?);

    // Outside the unit disc the dispatcher transforms back inside.
    println!("F1(1;1,1;3;-2,0.5) = {:.15}", appell_f1(1.0, 1.0, 1.0, 3.0, -2.0, 0.5, &p)?);
    Ok(())
}
