/* Copyright 2026 The strucheck Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <vector>

class Outer; // forward declaration only

class Outer {
public:
    typedef int Index;
    using Size = unsigned long;
    friend class Helper;
    struct Node {
        int payload;
    };
    enum Color { Red, Green };
    template <typename T> void put(T value);
    Index first() const;
private:
    int count_;
};
