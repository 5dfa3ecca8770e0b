#include <sstream>

#include "alphanorm/errors.hpp"
#include "alphanorm/json_io.hpp"
#include "alphanorm/random.hpp"
#include "doctest.h"

using namespace alphanorm;

TEST_CASE("matrix JSON round trip is bit exact") {
    Rng rng(51);
    const ComplexMatrix m = ginibre(3, 2, rng);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(back == m);
}

TEST_CASE("matrix JSON without imaginary part") {
    const ComplexMatrix m = matrix_from_json(R"({"rows":2,"cols":2,"re":[[0,1],[0,0]]})");
    CHECK(m(0, 1) == Complex(1, 0));
    CHECK(m.imag().isZero(0.0));
}

TEST_CASE("malformed matrix JSON") {
    CHECK_THROWS_AS(matrix_from_json("{"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"rows":2,"cols":2,"re":[[0,1]]})"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"rows":1,"cols":2,"re":[[0]]})"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"rows":0,"cols":2,"re":[]})"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"cols":1,"re":[[0]]})"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"rows":1,"cols":1,"re":[["x"]]})"), ParseError);
}

TEST_CASE("block matrix JSON round trip") {
    Rng rng(52);
    BlockMatrix t = BlockMatrix::zeros({1, 2}, {2, 1});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) t.set_block(i, j, ginibre(t.row_dims()[i], t.col_dims()[j], rng));
    CHECK(block_matrix_from_json(block_matrix_to_json(t)) == t);
    CHECK_THROWS_AS(block_matrix_from_json(R"({"row_dims":[1],"col_dims":[1],"blocks":[[{"rows":2,"cols":1,"re":[[0],[0]]}]]})"),
                    ParseError);
    CHECK_THROWS_AS(block_matrix_from_json(R"({"row_dims":[1],"col_dims":[1],"blocks":[]})"), ParseError);
}

TEST_CASE("bound report JSON keeps the field order") {
    BoundReport r;
    r.theorem = Theorem::est8;
    r.value = 0.5;
    r.alpha = 1.0;
    r.p = 2.0;
    r.reference = 0.5;
    const std::string s = bound_report_to_json(r);
    CHECK(s.find("\"theorem\":\"est8\"") == 1);
    CHECK(s.find("\"alpha\"") < s.find("\"p\""));
    CHECK(s.find("\"s\":null") != std::string::npos);
    CHECK(s.find("\"cap\":null") != std::string::npos);
}

TEST_CASE("suite CSV") {
    SuiteReport r;
    CheckRecord rec;
    rec.check_id = "est6";
    rec.seed = 7;
    rec.theorem = "est6";
    rec.alpha = 0.25;
    rec.lhs = 1.0;
    rec.rhs = 1.5;
    rec.slack = 0.5;
    r.records.push_back(rec);
    std::ostringstream os;
    write_suite_csv(os, r);
    CHECK(os.str() == "check_id,seed,theorem,alpha,p,s,lhs,rhs,slack,verdict\nest6,7,est6,0.25,,,1,1.5,0.5,pass\n");
}

TEST_CASE("missing file") { CHECK_THROWS_AS(read_file("/nonexistent/x.json"), IoError); }
