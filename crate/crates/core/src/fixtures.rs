//! Built-in reference data: the twenty pattern-2 search hits with their
//! parameter `q`, the sixteen search hits outside every parameterization, and
//! the printed prefactors of the eighteen acute sequences.

use crate::exact::Rational;
use crate::sspace::SParams;

/// A pattern-2 hit printed as `[1/2, d/b, d/a, d/c]`.
#[derive(Clone, Copy, Debug)]
pub struct Table1Row {
    pub b: i64,
    pub a: i64,
    pub c: i64,
    pub d: i64,
    pub q: &'static str,
}

impl Table1Row {
    pub fn sparams(&self) -> SParams {
        SParams::new(
            Rational::frac(1, 2),
            Rational::frac(self.d, self.b),
            Rational::frac(self.d, self.a),
            Rational::frac(self.d, self.c),
        )
    }

    pub fn q(&self) -> Rational {
        self.q.parse().expect("fixture q")
    }
}

const fn t1(b: i64, a: i64, c: i64, d: i64, q: &'static str) -> Table1Row {
    Table1Row { b, a, c, d, q }
}

pub const TABLE1: [Table1Row; 20] = [
    t1(7, 5, 35, 16, "1/3"),
    t1(119, 91, 221, 80, "1/5"),
    t1(161, 119, 391, 160, "1/4"),
    t1(527, 425, 775, 224, "1/7"),
    t1(1519, 1271, 2009, 480, "1/9"),
    t1(41, 29, 1189, 560, "2/5"),
    t1(1081, 851, 1739, 560, "1/6"),
    t1(3479, 2989, 4331, 880, "1/11"),
    t1(3713, 3055, 5135, 1344, "1/8"),
    t1(6887, 6035, 8245, 1456, "1/13"),
    t1(1241, 901, 3869, 1680, "2/7"),
    t1(12319, 10961, 14351, 2240, "1/15"),
    t1(2047, 1495, 5785, 2464, "3/11"),
    t1(9401, 7979, 12019, 2640, "1/10"),
    t1(20447, 18415, 23345, 3264, "1/17"),
    t1(721, 511, 7519, 3520, "3/8"),
    t1(4633, 3485, 9605, 3696, "2/9"),
    t1(4879, 3649, 10591, 4160, "3/13"),
    t1(959, 679, 13289, 6240, "5/13"),
    t1(4681, 3379, 16459, 7280, "3/10"),
];

/// Search hits that match neither closed form, as printed.
pub const TABLE2: [[&str; 4]; 16] = [
    ["3/10", "4/15", "4/5", "3/20"],
    ["42/55", "35/132", "20/77", "35/132"],
    ["41/65", "455/943", "13/35", "23/41"],
    ["143/217", "403/616", "8/11", "104/217"],
    ["68/401", "401/721", "2807/4964", "4964/41303"],
    ["348/401", "401/527", "6817/8700", "8700/12431"],
    ["314/415", "415/527", "1411/1570", "1570/2573"],
    ["188/433", "433/623", "964/3031", "38537/45308"],
    ["253/439", "439/527", "6325/7463", "6325/13609"],
    ["205/457", "457/527", "5125/7769", "5125/14167"],
    ["294/473", "473/697", "3738/8041", "19393/26166"],
    ["55/479", "479/721", "3353/4015", "4015/49337"],
    ["138/481", "481/527", "3450/8177", "3450/14911"],
    ["341/661", "661/791", "1903/4627", "58993/74693"],
    ["38/751", "751/959", "3686/5257", "3686/102887"],
    ["62/769", "769/791", "346/5383", "10726/86897"],
];

pub fn table1_sparams() -> Vec<SParams> {
    TABLE1.iter().map(Table1Row::sparams).collect()
}

pub fn table2_sparams() -> Vec<SParams> {
    TABLE2
        .iter()
        .map(|row| SParams::from_array(row.map(|x| x.parse().expect("fixture entry"))))
        .collect()
}

/// Printed prefactors of `n(n+1)(n+2)` in `s2..s4` and of `n(n+1)²(n+2)` in
/// `t`, for the sequence with `s1 = 1/d`.
#[derive(Clone, Copy, Debug)]
pub struct AcuteRow {
    pub d: i64,
    pub s_coefficient: &'static str,
    pub t_coefficient: &'static str,
}

const fn ac(d: i64, s_coefficient: &'static str, t_coefficient: &'static str) -> AcuteRow {
    AcuteRow {
        d,
        s_coefficient,
        t_coefficient,
    }
}

pub const ACUTE_PRINTED: [AcuteRow; 18] = [
    ac(2, "8/3", "32/3"),
    ac(3, "3/2", "6"),
    ac(4, "16/15", "64/15"),
    ac(5, "5/6", "10/3"),
    ac(6, "24/35", "96/35"),
    ac(7, "7/12", "7/3"),
    ac(8, "32/63", "128/63"),
    ac(9, "9/20", "9/5"),
    ac(10, "40/99", "160/99"),
    ac(11, "11/30", "22/15"),
    ac(12, "48/143", "192/143"),
    ac(13, "13/42", "26/21"),
    ac(14, "56/195", "224/195"),
    ac(15, "15/56", "15/14"),
    ac(16, "64/255", "256/255"),
    ac(17, "17/72", "17/18"),
    ac(18, "72/323", "288/323"),
    ac(19, "19/90", "38/45"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sspace::governing_residual;

    #[test]
    fn every_table_row_is_a_solution() {
        for s in table1_sparams().iter().chain(&table2_sparams()) {
            assert!(governing_residual(s).unwrap().is_zero(), "{s}");
        }
    }

    #[test]
    fn table1_numerators_divisible_by_16() {
        for row in TABLE1 {
            assert_eq!(row.d % 16, 0);
        }
    }

    #[test]
    fn acute_t_prefactor_is_four_times_s_prefactor() {
        for row in ACUTE_PRINTED {
            let s: Rational = row.s_coefficient.parse().unwrap();
            let t: Rational = row.t_coefficient.parse().unwrap();
            assert_eq!(t, s * Rational::integer(4));
        }
    }
}
