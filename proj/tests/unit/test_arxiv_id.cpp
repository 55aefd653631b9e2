#include "citecorr/arxiv_id.hpp"

#include <doctest.h>

using namespace citecorr;

TEST_CASE("old-style identifiers")
{
    CHECK(normalize_arxiv_id("hep-th/9901001") == "hep-th/9901001");
    CHECK(normalize_arxiv_id("hep-th/9901001v3") == "hep-th/9901001");
    CHECK(normalize_arxiv_id("HEP-TH/9901001") == "hep-th/9901001");
    CHECK(normalize_arxiv_id("math.AG/9901001") == "math/9901001");
    CHECK(normalize_arxiv_id("arXiv:hep-th/9901001") == "hep-th/9901001");
    CHECK(normalize_arxiv_id("oai:arXiv.org:cond-mat/9908044") == "cond-mat/9908044");
    CHECK(is_old_style_id("hep-th/9901001"));
    CHECK(archive_prefix("hep-th/9901001") == "hep-th");
}

TEST_CASE("new-style identifiers")
{
    CHECK(normalize_arxiv_id("0704.0001") == "0704.0001");
    CHECK(normalize_arxiv_id("arXiv:0704.0001v2") == "0704.0001");
    CHECK(normalize_arxiv_id("1501.00001") == "1501.00001");
    CHECK_FALSE(is_old_style_id("0704.0001"));
    CHECK(archive_prefix("0704.0001").empty());
}

TEST_CASE("malformed identifiers")
{
    for (const char* bad : {"", "hep-th/99129", "hep-th/9913001", "0713.0001", "hep-th", "/9901001",
                            "hep th/9901001", "07040001", "0704.01"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(normalize_arxiv_id(bad), InvalidIdentifier);
        CHECK_FALSE(try_normalize_arxiv_id(bad));
    }
}
