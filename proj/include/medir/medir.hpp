#ifndef MEDIR_MEDIR_HPP
#define MEDIR_MEDIR_HPP

#include "corpus.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "index.hpp"
#include "porter.hpp"
#include "query.hpp"
#include "resources.hpp"
#include "retrieval.hpp"
#include "run_config.hpp"
#include "text.hpp"
#include "topics.hpp"

#endif
