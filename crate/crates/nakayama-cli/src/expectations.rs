//! Closed-form values known for each gallery family, stated in the
//! structure's own parameters.

use nakayama::field::Field;
use nakayama::gallery::{Family, GalleryStructure, Structure};
use serde_json::{json, Value};

fn record(constructor: &str, expected: impl Into<String>) -> Value {
    json!({ "constructor": constructor, "expected": expected.into() })
}

pub fn expectations(g: &GalleryStructure) -> Vec<Value> {
    match g {
        GalleryStructure::Rational(s) => for_structure(s),
        GalleryStructure::Finite(s) => for_structure(s),
    }
}

fn for_structure<F: Field>(s: &Structure<F>) -> Vec<Value> {
    match &s.family {
        Family::Qci(qci) => {
            let q = qci.q().clone();
            let qi = q.inverse().expect("q is nonzero");
            let one_minus_q = F::one() - q.clone();
            vec![
                record("jacobian(alpha(a,b,c,d))", format!("a*b + d*x + ({qi})*c*y")),
                record("divergence(delta(a,b,c,d))", format!("(a+b) + ({qi})*d*x + c*y")),
                record("nakayama", format!("x -> ({qi})*x, y -> ({q})*y")),
                record("jacobian(inner(1+x))", format!("1 + ({one_minus_q})*x")),
                record("jacobian(alpha(1,1,1,0))", format!("1 + ({qi})*y")),
            ]
        }
        Family::Exterior(e) => {
            let n = e.generators();
            let even = n % 2 == 0;
            let mut v = vec![
                record("twisted_jacobian(phi_f)", "det(f)^-1"),
                record("bavula_jacobian(phi_f)", "det(f)"),
                record("bavula_jacobian(u) * twisted_jacobian(u), u odd", "1"),
                record("twisted_jacobian(inner(1+a)), a odd", if even { "1 - 2*a" } else { "1" }),
                record("nakayama", if even { "x_i -> -x_i" } else { "identity" }),
                record("divergence(sum_i a_i d/dx_i)", "sum_i d/dx_i (a_i)"),
            ];
            if n >= 3 {
                v.extend([
                    record("twisted_jacobian(gamma(i,l,a1<a2<a3)), i not in {a1,a2,a3}", "1"),
                    record("twisted_jacobian(gamma(a1,l,a1<a2<a3))", "1 - l*x_a2*x_a3"),
                    record("twisted_jacobian(gamma(a2,l,a1<a2<a3))", "1 + l*x_a1*x_a3"),
                    record("twisted_jacobian(gamma(a3,l,a1<a2<a3))", "1 - l*x_a1*x_a2"),
                ]);
            }
            v
        }
        Family::Cyclic(c) => {
            let p = c.p();
            vec![
                record("jacobian(u_f)", format!("mu(f^{}) + sum_(i=1..{}) (mu(f^({}-i)) + mu(f^({p}-i))) x^i", p - 1, p - 1, p - 1)),
                record("constant term of jacobian(u_f)", format!("f_1^{}", p - 1)),
                record("mu(jacobian(u_f))", "1"),
            ]
        }
        Family::TrivialExtension(_) => vec![
            record("jacobian(u)", "t + tau, t from the base block, tau in the image of the Connes boundary"),
            record("twisted_jacobian(u_z), z central unit", "z^-1"),
            record("nakayama", "identity"),
        ],
        Family::Matrix(_) | Family::GroupAlgebra(_) | Family::Truncated(_) => vec![
            record("nakayama", "identity"),
            record("jacobian(inner(s))", "1"),
        ],
        Family::Custom => Vec::new(),
    }
}
