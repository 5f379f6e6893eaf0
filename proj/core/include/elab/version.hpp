#pragma once

#define ELAB_VERSION "0.1.0"
