#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "orbcount/fetch.hpp"
#include "orbcount/polynomial.hpp"

using namespace orbcount;

namespace {

std::string data(const std::string& name) { return std::string(ORBCOUNT_TEST_DATA) + "/" + name; }

// Serves fixture records in the database reply shape.
class FixtureServer {
public:
    FixtureServer() {
        svr_.Get("/api/nf_fields/", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits_;
            const auto disc = req.get_param_value("disc_abs");
            const auto degree = req.get_param_value("degree");
            if (disc == "777") return res.set_content("<html>oops</html>", "text/html");
            if (disc == "778") {
                std::this_thread::sleep_for(std::chrono::milliseconds(800));
                return res.set_content("{}", "application/json");
            }
            const auto path = data("nf_" + degree + "_" + disc + ".json");
            if (!std::filesystem::exists(path)) {
                res.status = 404;
                return res.set_content("{\"error\":\"no such field\"}", "application/json");
            }
            const auto fx = nlohmann::json::parse(detail::read_text(path));
            nlohmann::json reply{{"data", {{{"label", degree + ".x." + disc}, {"class_number", fx["h"]}, {"regulator", fx["R"]}}}}};
            res.set_content(reply.dump(), "application/json");
        });
        port_ = svr_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { svr_.listen_after_bind(); });
        svr_.wait_until_ready();
    }
    ~FixtureServer() {
        svr_.stop();
        thread_.join();
    }
    FetchOptions options(const std::filesystem::path& cache = {}) const {
        FetchOptions o;
        o.url_template = "http://127.0.0.1:" + std::to_string(port_) + "/api/nf_fields/?degree={degree}&disc_abs={disc}";
        o.cache_dir = cache;
        o.timeout_seconds = 0.3;
        return o;
    }
    int hits() const { return hits_; }

private:
    httplib::Server svr_;
    int port_ = 0;
    std::thread thread_;
    std::atomic<int> hits_{0};
};

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("orbcount_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(FileSource, Loads) {
    const auto inv = load_invariants_file(data("nf_2_5.json"));
    EXPECT_EQ(inv.source, InvariantSource::file);
    EXPECT_EQ(inv.field_discriminant, 5);
    EXPECT_EQ(*inv.class_number, 1);
    EXPECT_NEAR(inv.hr_product, 0.4812118, 1e-7);
    EXPECT_NEAR(load_invariants_file(data("hr_only_5.json")).hr_product, 0.4812118, 1e-7);
}

TEST(FileSource, Errors) {
    EXPECT_THROW(load_invariants_file(data("bad_missing_r.json")), ParseError);
    EXPECT_THROW(load_invariants_file(data("bad_syntax.json")), ParseError);
    EXPECT_THROW(load_invariants_file(data("does_not_exist.json")), IoError);
}

TEST(RemoteSource, QuadraticMatchesBuiltin) {
    FixtureServer server;
    const auto inv = fetch_invariants_remote(5, 2, server.options());
    EXPECT_EQ(inv.source, InvariantSource::remote);
    EXPECT_EQ(*inv.class_number, 1);
    EXPECT_NEAR(*inv.regulator, *quadratic_invariants(5).regulator, 1e-9);
}

TEST(RemoteSource, CubicAgreesWithEstimate) {
    FixtureServer server;
    const auto inv = fetch_invariants_remote(229, 3, server.options());
    const double est = zeta_residue_estimate(parse_polynomial("x^3-4x-1"), 1000000) * std::sqrt(229.0);
    EXPECT_LT(std::abs(inv.hr_product - est) / inv.hr_product, 0.02);
}

TEST(RemoteSource, CacheIsUsedOnceWritten) {
    const auto dir = fresh_dir("cache");
    FetchOptions opt;
    {
        FixtureServer server;
        opt = server.options(dir);
        fetch_invariants_remote(40, 2, opt);
        fetch_invariants_remote(40, 2, opt);
        EXPECT_EQ(server.hits(), 1);
    }
    EXPECT_TRUE(std::filesystem::exists(dir / "nf_2_40.json"));
    const auto cached = fetch_invariants_remote(40, 2, opt);  // server is gone
    EXPECT_EQ(*cached.class_number, 2);
    EXPECT_EQ(cached.source, InvariantSource::remote);
    std::filesystem::remove_all(dir);
}

TEST(RemoteSource, FailuresAreTyped) {
    FixtureServer server;
    EXPECT_THROW(fetch_invariants_remote(11, 2, server.options()), NetworkError);  // 404
    try {
        fetch_invariants_remote(777, 2, server.options());
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("oops"), std::string::npos);
    }
    EXPECT_THROW(fetch_invariants_remote(778, 2, server.options()), NetworkError);  // timeout
    FetchOptions closed;
    closed.url_template = "http://127.0.0.1:1/{degree}/{disc}";
    closed.timeout_seconds = 0.3;
    EXPECT_THROW(fetch_invariants_remote(5, 2, closed), NetworkError);
    closed.url_template = "no-scheme/{disc}";
    EXPECT_THROW(fetch_invariants_remote(5, 2, closed), ArgumentError);
}

TEST(RemoteSource, EnvironmentOptions) {
    ::setenv("ORBCOUNT_REMOTE_URL", "http://example.invalid/{disc}", 1);
    ::setenv("ORBCOUNT_CACHE_DIR", "/tmp/orbcount-cache", 1);
    ::setenv("ORBCOUNT_TIMEOUT", "2.5", 1);
    const auto o = fetch_options_from_env();
    EXPECT_EQ(o.url_template, "http://example.invalid/{disc}");
    EXPECT_EQ(o.cache_dir, "/tmp/orbcount-cache");
    EXPECT_DOUBLE_EQ(o.timeout_seconds, 2.5);
    ::unsetenv("ORBCOUNT_REMOTE_URL");
    ::unsetenv("ORBCOUNT_CACHE_DIR");
    ::unsetenv("ORBCOUNT_TIMEOUT");
    EXPECT_EQ(fetch_options_from_env().url_template, default_remote_template);
}
