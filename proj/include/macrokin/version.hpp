#pragma once

#define MACROKIN_VERSION "0.1.0"
