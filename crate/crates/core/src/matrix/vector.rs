use crate::error::{Error, Result};
use crate::scalar::Element;

pub fn dot<T: Element>(u: &[T], v: &[T]) -> Result<T> {
    if u.len() != v.len() {
        return Err(Error::dims("dot", format!("lengths {} and {}", u.len(), v.len())));
    }
    let first = u.first().ok_or_else(|| Error::dims("dot", "empty vectors"))?;
    Ok(u.iter()
        .zip(v)
        .fold(first.zero_like(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

pub fn norm_squared<T: Element>(v: &[T]) -> Result<T> {
    dot(v, v)
}

pub fn cross<T: Element>(u: &[T], v: &[T]) -> Result<Vec<T>> {
    if u.len() != 3 || v.len() != 3 {
        return Err(Error::dims(
            "cross",
            format!("lengths {} and {}, both must be 3", u.len(), v.len()),
        ));
    }
    let term = |i: usize, j: usize| u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
    Ok(vec![term(1, 2), term(2, 0), term(0, 1)])
}

pub fn scale<T: Element>(v: &[T], k: &T) -> Vec<T> {
    v.iter().map(|x| x.clone() * k.clone()).collect()
}

pub fn sub<T: Element>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect()
}

pub fn is_zero<T: Element>(v: &[T]) -> bool {
    v.iter().all(Element::is_zero_elem)
}
