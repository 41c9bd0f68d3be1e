#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "sai/match.hpp"

namespace sai {

// Go Text Protocol v2 session over text streams. Extensions: sai-params
// (root alpha/beta/winrate), sai-agent <lambda> <mu> <threshold>,
// sai-score-est (subtree-median score estimate).
class GtpSession {
public:
    explicit GtpSession(EngineSpec spec);
    void run(std::istream& in, std::ostream& out);

    static std::string vertex_to_gtp(Vertex v, int size);
    static Vertex gtp_to_vertex(const std::string& s, int size);

private:
    std::string handle(const std::string& command, bool& quit);

    EngineSpec spec_;
    std::unique_ptr<Evaluator> evaluator_;
    Position position_;
    int moves_played_ = 0;
};

}  // namespace sai
